/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_lambdasweep_free: (a: number, b: number) => void;
export const __wbg_phasecurve_free: (a: number, b: number) => void;
export const lambda_sweep: (a: number, b: number, c: number) => [number, number, number];
export const lambdasweep_baseline: (a: number) => [number, number];
export const lambdasweep_count: (a: number) => number;
export const lambdasweep_curve: (a: number, b: number) => [number, number];
export const lambdasweep_label: (a: number, b: number) => [number, number];
export const lambdasweep_lambda: (a: number) => [number, number];
export const phase_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const phasecurve_best_delta_phi: (a: number) => number;
export const phasecurve_best_phi: (a: number) => number;
export const phasecurve_delta_phi: (a: number) => [number, number];
export const phasecurve_mean: (a: number) => [number, number];
export const phasecurve_phi: (a: number) => [number, number];
export const state_amplitudes: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
