import init, { phase_curve, lambda_sweep, state_amplitudes } from "./pkg/mzi_parity_web.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

function fields(form) {
  const out = {};
  for (const el of form.querySelectorAll("input, select")) {
    out[el.name] = el.type === "number" ? Number(el.value) : el.value;
  }
  return out;
}

function setup(canvas) {
  const dpr = window.devicePixelRatio || 1;
  const { width, height } = canvas.getBoundingClientRect();
  canvas.width = width * dpr;
  canvas.height = height * dpr;
  const ctx = canvas.getContext("2d");
  ctx.scale(dpr, dpr);
  ctx.clearRect(0, 0, width, height);
  ctx.font = "12px system-ui, sans-serif";
  return { ctx, width, height };
}

// series: [{ x, y, color, dash, label }]
function plot(canvas, series, { xlabel, ylabel, logy = false, ymax = Infinity }) {
  const { ctx, width, height } = setup(canvas);
  const pad = { l: 58, r: 12, t: 12, b: 36 };
  const ty = (v) => (logy ? Math.log10(v) : v);
  let xs = [], ys = [];
  for (const s of series) {
    s.x.forEach((x, i) => {
      const y = s.y[i];
      if (Number.isFinite(y) && y <= ymax && (!logy || y > 0)) { xs.push(x); ys.push(ty(y)); }
    });
  }
  if (!xs.length) return;
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  let y0 = Math.min(...ys), y1 = Math.max(...ys);
  if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
  const sx = (x) => pad.l + ((x - x0) / (x1 - x0 || 1)) * (width - pad.l - pad.r);
  const sy = (y) => height - pad.b - ((ty(y) - y0) / (y1 - y0)) * (height - pad.t - pad.b);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.strokeRect(pad.l, pad.t, width - pad.l - pad.r, height - pad.t - pad.b);
  for (let k = 0; k <= 4; k++) {
    const x = x0 + ((x1 - x0) * k) / 4;
    ctx.fillText(x.toFixed(2), sx(x) - 12, height - pad.b + 14);
    const yv = y0 + ((y1 - y0) * k) / 4;
    const y = logy ? 10 ** yv : yv;
    ctx.fillText(y.toPrecision(3), 4, sy(y) + 4);
  }
  ctx.fillText(xlabel, width / 2 - 20, height - 6);
  ctx.save();
  ctx.translate(12, pad.t + 60);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(ylabel, -60, 0);
  ctx.restore();

  series.forEach((s, n) => {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash ? [6, 4] : []);
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    let pen = false;
    s.x.forEach((x, i) => {
      const y = s.y[i];
      if (!Number.isFinite(y) || y > ymax || (logy && y <= 0)) { pen = false; return; }
      pen ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y));
      pen = true;
    });
    ctx.stroke();
    if (s.label) {
      ctx.fillStyle = s.color;
      ctx.fillText(s.label, width - pad.r - 130, pad.t + 16 + 15 * n);
    }
  });
  ctx.setLineDash([]);
}

function bars(canvas, m, re, im) {
  const { ctx, width, height } = setup(canvas);
  const pad = { l: 40, r: 12, t: 12, b: 30 };
  const mid = pad.t + (height - pad.t - pad.b) / 2;
  const half = (height - pad.t - pad.b) / 2;
  const slot = (width - pad.l - pad.r) / m.length;
  ctx.strokeStyle = "#999";
  ctx.beginPath(); ctx.moveTo(pad.l, mid); ctx.lineTo(width - pad.r, mid); ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.fillText("+1", 8, pad.t + 8);
  ctx.fillText("−1", 8, height - pad.b);
  m.forEach((mv, i) => {
    const x = pad.l + i * slot;
    const w = Math.max(1, slot * 0.35);
    ctx.fillStyle = COLORS[0];
    ctx.fillRect(x + slot * 0.12, mid, w, -re[i] * half);
    ctx.fillStyle = COLORS[1];
    ctx.fillRect(x + slot * 0.5, mid, w, -im[i] * half);
    if (m.length <= 21 || i % Math.ceil(m.length / 21) === 0) {
      ctx.fillStyle = "#444";
      ctx.fillText(String(mv), x + slot * 0.3, height - pad.b + 16);
    }
  });
}

function fmt(x) {
  return Number.isFinite(x) ? x.toPrecision(6) : String(x);
}

function report(el, fn) {
  try {
    el.classList.remove("err");
    el.textContent = fn() || "";
  } catch (e) {
    el.classList.add("err");
    el.textContent = e.message || String(e);
  }
}

function drawCurve() {
  const f = fields(document.getElementById("curve-form"));
  report(document.getElementById("curve-out"), () => {
    const c = phase_curve(f.state, f.n, f.eta, f.m0, f.scheme, f.lambda, 600);
    const phi = Array.from(c.phi());
    const dphi = Array.from(c.delta_phi());
    const best = c.best_delta_phi(), at = c.best_phi();
    c.free();
    const cap = 20 * (Number.isFinite(best) ? best : 1);
    plot(document.getElementById("curve-plot"), [
      { x: phi, y: dphi, color: COLORS[0], label: "δφ" },
      { x: [phi[0], phi[phi.length - 1]], y: [1 / f.n, 1 / f.n], color: "#888", dash: true, label: "1/N" },
    ], { xlabel: "φ", ylabel: "δφ", logy: true, ymax: cap });
    return Number.isFinite(best)
      ? `minimum δφ = ${fmt(best)} at φ = ${fmt(at)}`
      : "no signal: the mean does not depend on the phase";
  });
  drawState(f);
}

function drawState(f) {
  report(document.getElementById("state-out"), () => {
    const a = state_amplitudes(f.state, f.n, f.eta, f.m0);
    const m = [], re = [], im = [];
    for (let i = 0; i < a.length; i += 3) { m.push(a[i]); re.push(a[i + 1]); im.push(a[i + 2]); }
    bars(document.getElementById("state-plot"), m, re, im);
    const p = re.map((r, i) => r * r + im[i] * im[i]);
    const mean = p.reduce((s, w, i) => s + w * m[i], 0);
    return `⟨J_z⟩ = ${fmt(mean)}   blue: Re c_m   red: Im c_m`;
  });
}

function drawSweep() {
  const f = fields(document.getElementById("sweep-form"));
  report(document.getElementById("sweep-out"), () => {
    const s = lambda_sweep(f.n, f.lambda_min, 101);
    const l = Array.from(s.lambda());
    const series = [{ x: l, y: Array.from(s.baseline()), color: "#000", dash: true, label: "1/√(λN)" }];
    for (let k = 0; k < s.count(); k++) {
      series.push({ x: l, y: Array.from(s.curve(k)), color: COLORS[k], label: s.label(k) });
    }
    const noon = series[1].y, base = series[0].y;
    const cross = l.find((_, i) => noon[i] < base[i]);
    s.free();
    plot(document.getElementById("sweep-plot"), series, { xlabel: "λ", ylabel: "min δφ", logy: true });
    return cross === undefined ? "NOON stays above the baseline" : `NOON beats 1/√(λN) from λ ≈ ${cross.toFixed(3)}`;
  });
}

await init();
for (const el of document.querySelectorAll("#curve-form input, #curve-form select")) el.addEventListener("change", drawCurve);
for (const el of document.querySelectorAll("#sweep-form input")) el.addEventListener("change", drawSweep);
window.addEventListener("resize", () => { drawCurve(); drawSweep(); });
drawCurve();
drawSweep();
