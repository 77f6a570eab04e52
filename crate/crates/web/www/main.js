// Build with:
//   cargo build -p fanspec-web --release --target wasm32-unknown-unknown
//   wasm-bindgen --target web --out-dir crates/web/www/pkg \
//     target/wasm32-unknown-unknown/release/fanspec_web.wasm
import init, { multipartite_explorer, extremal_sweep, perron_profile } from "./pkg/fanspec_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function show(id, text, isError = false) {
  const el = $(id);
  el.textContent = text;
  el.className = isError ? "out err" : "out";
}

// Draws point series on a canvas with a shared linear scale.
// series: [{points: [[x, y]], color, line, radius}]; hlines: [{y, color}]
function plot(canvas, series, hlines = []) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, width, height);
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1])).concat(hlines.map((h) => h.y));
  if (xs.length === 0) return;
  let [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const sx = (x) => pad + ((x - x0) / (x1 - x0)) * (width - 2 * pad);
  const sy = (y) => height - pad - ((y - y0) / (y1 - y0)) * (height - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, width - 2 * pad, height - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(y1.toPrecision(4), 2, pad + 4);
  ctx.fillText(y0.toPrecision(4), 2, height - pad);
  ctx.fillText(x0.toPrecision(4), pad, height - pad + 14);
  ctx.fillText(x1.toPrecision(4), width - pad - 30, height - pad + 14);
  if (y0 < 0 && y1 > 0) {
    ctx.strokeStyle = "#ccc";
    ctx.beginPath();
    ctx.moveTo(pad, sy(0));
    ctx.lineTo(width - pad, sy(0));
    ctx.stroke();
  }
  for (const h of hlines) {
    ctx.strokeStyle = h.color;
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(pad, sy(h.y));
    ctx.lineTo(width - pad, sy(h.y));
    ctx.stroke();
    ctx.setLineDash([]);
  }
  for (const s of series) {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    if (s.line) {
      ctx.beginPath();
      s.points.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
      ctx.stroke();
    }
    if (s.radius) {
      for (const [x, y] of s.points) {
        ctx.beginPath();
        ctx.arc(sx(x), sy(y), s.radius, 0, 2 * Math.PI);
        ctx.fill();
      }
    }
  }
}

function run(outId, f) {
  try {
    f();
  } catch (e) {
    show(outId, String(e), true);
  }
}

function explorer() {
  run("mp-out", () => {
    const r = JSON.parse(multipartite_explorer($("mp-sizes").value));
    show("mp-out", `n = ${r.n}, edges = ${r.edges}, λ = ${r.lambda.toFixed(10)}\n` +
      "curve: sign(φ(x))·log10(1 + |φ(x)|); the marker is λ");
    plot($("mp-canvas"), [
      { points: r.curve, color: COLORS[0], line: true },
      { points: [[r.lambda, 0]], color: COLORS[1], radius: 4 },
    ]);
  });
}

function sweep() {
  run("sw-out", () => {
    const k = num("sw-k"), r = num("sw-r");
    const rows = JSON.parse(extremal_sweep(k, r, num("sw-from"), num("sw-to"), num("sw-step")));
    const last = rows[rows.length - 1];
    show("sw-out", `${rows.length} points; at n = ${last.n}: λ = ${last.lambda.toFixed(8)}, ` +
      `bound = ${last.lower_bound.toFixed(8)}, edges = ${last.edges} (formula ${last.formula})\n` +
      "plotted: λ − bound (blue) and edges − formula (red)");
    plot($("sw-canvas"), [
      { points: rows.map((x) => [x.n, x.lambda - x.lower_bound]), color: COLORS[0], line: true, radius: 2 },
      { points: rows.map((x) => [x.n, x.edges - x.formula]), color: COLORS[1], radius: 2 },
    ]);
  });
}

function profile() {
  run("pp-out", () => {
    const p = JSON.parse(perron_profile(num("pp-n"), num("pp-k"), num("pp-r")));
    show("pp-out", `λ = ${p.lambda.toFixed(10)}, min entry = ${p.min_entry.toFixed(10)}, ` +
      `bound 1 − 20k²r²/n = ${p.bound.toFixed(6)}\ncolour = part; larger dots lie in the embedded graph`);
    const parts = Math.max(...p.part) + 1;
    const series = [];
    for (let j = 0; j < parts; j++) {
      for (const embedded of [false, true]) {
        series.push({
          points: p.vector.map((x, v) => [v, x]).filter(([v]) => p.part[v] === j && p.embedded[v] === embedded),
          color: COLORS[j % COLORS.length],
          radius: embedded ? 4 : 1.5,
        });
      }
    }
    plot($("pp-canvas"), series, p.bound > 0 ? [{ y: p.bound, color: "#888" }] : []);
  });
}

await init();
$("mp-run").onclick = explorer;
$("sw-run").onclick = sweep;
$("pp-run").onclick = profile;
explorer();
sweep();
profile();
