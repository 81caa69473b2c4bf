import init, { interpolantSamples, caputoValues, measuredOrder } from "./pkg/caputo_web.js";

const $ = (id) => document.getElementById(id);
const status = $("status");

function params() {
  return {
    scheme: $("scheme").value,
    alpha: Number($("alpha").value),
    m: Number($("m").value),
    beta: Number($("beta").value),
    xi: Number($("xi").value),
    steps: Number($("steps").value),
  };
}

// series: [{ xs, ys, color, dots }]
function plot(canvas, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  ctx.clearRect(0, 0, w, h);
  const xs = series.flatMap((s) => s.xs);
  const ys = series.flatMap((s) => s.ys).filter(Number.isFinite);
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y1 - y0 < 1e-12) { y0 -= 1; y1 += 1; }
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 14);
  ctx.fillText(x1.toPrecision(3), w - pad - 24, h - pad + 14);

  for (const s of series) {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    if (s.dots) {
      s.xs.forEach((x, i) => {
        ctx.beginPath();
        ctx.arc(px(x), py(s.ys[i]), 2.5, 0, 2 * Math.PI);
        ctx.fill();
      });
    } else {
      ctx.beginPath();
      s.xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(s.ys[i])) : ctx.moveTo(px(x), py(s.ys[i]))));
      ctx.stroke();
    }
  }
}

function redraw() {
  const p = params();
  try {
    const flat = interpolantSamples(p.scheme, p.m, p.beta, p.xi, p.steps, p.steps, 400);
    const s = [], q = [], u = [];
    for (let i = 0; i < flat.length; i += 3) { s.push(flat[i]); q.push(flat[i + 1]); u.push(flat[i + 2]); }
    const nodes = Array.from({ length: p.steps + 1 }, (_, i) => i / p.steps);
    const nodeVals = nodes.map((t) => Math.abs(t - p.xi) ** (p.m + p.beta));
    plot($("interp"), [
      { xs: s, ys: u, color: "#bbb" },
      { xs: s, ys: q, color: "#0a5" },
      { xs: nodes, ys: nodeVals, color: "#05a", dots: true },
    ]);

    const d = caputoValues(p.scheme, p.alpha, p.m, p.beta, p.xi, p.steps);
    plot($("values"), [{ xs: nodes.slice(1), ys: Array.from(d), color: "#a30", dots: true }]);
    status.textContent = "";
  } catch (e) {
    status.textContent = String(e);
  }
}

function measure() {
  const p = params();
  try {
    const [r, expected] = measuredOrder(p.scheme, p.alpha, p.m, p.beta, p.xi, Number($("tauexp").value));
    $("r").textContent = r.toFixed(4);
    $("expected").textContent = expected.toFixed(4);
    status.textContent = "";
  } catch (e) {
    status.textContent = String(e);
  }
}

await init();
for (const id of ["scheme", "alpha", "m", "beta", "xi", "steps"]) $(id).addEventListener("change", redraw);
$("measure").addEventListener("click", measure);
redraw();
