/* tslint:disable */
/* eslint-disable */

/**
 * Minimum parity sensitivity of the five reference inputs against
 * transmission, plus the `1/sqrt(lambda N)` baseline.
 */
export class LambdaSweep {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    baseline(): Float64Array;
    count(): number;
    curve(k: number): Float64Array;
    label(k: number): string;
    lambda(): Float64Array;
}

/**
 * Mean signal and sensitivity sampled at midpoints of `(0, pi)`.
 */
export class PhaseCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    best_delta_phi(): number;
    /**
     * `NaN` when there is no phase signal.
     */
    best_phi(): number;
    /**
     * `Infinity` where the slope vanishes.
     */
    delta_phi(): Float64Array;
    mean(): Float64Array;
    phi(): Float64Array;
}

export function lambda_sweep(n: number, lambda_min: number, points: number): LambdaSweep;

export function phase_curve(state: string, n: number, eta: number, m0: number, scheme: string, lambda: number, points: number): PhaseCurve;

export function state_amplitudes(state: string, n: number, eta: number, m0: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_lambdasweep_free: (a: number, b: number) => void;
    readonly __wbg_phasecurve_free: (a: number, b: number) => void;
    readonly lambda_sweep: (a: number, b: number, c: number) => [number, number, number];
    readonly lambdasweep_baseline: (a: number) => [number, number];
    readonly lambdasweep_count: (a: number) => number;
    readonly lambdasweep_curve: (a: number, b: number) => [number, number];
    readonly lambdasweep_label: (a: number, b: number) => [number, number];
    readonly lambdasweep_lambda: (a: number) => [number, number];
    readonly phase_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly phasecurve_best_delta_phi: (a: number) => number;
    readonly phasecurve_best_phi: (a: number) => number;
    readonly phasecurve_delta_phi: (a: number) => [number, number];
    readonly phasecurve_mean: (a: number) => [number, number];
    readonly phasecurve_phi: (a: number) => [number, number];
    readonly state_amplitudes: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
