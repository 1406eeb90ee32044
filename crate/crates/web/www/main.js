import init, { pt_spectra, compression, rank2 } from "./pkg/entwb_web.js";

const $ = (id) => document.getElementById(id);

function indices(text) {
  return text.split(",").map((s) => Number.parseInt(s.trim(), 10));
}

function plot(points, key) {
  const canvas = $("spec-canvas");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const values = points.flatMap((p) => p[key]);
  const lo = Math.min(0, ...values);
  const hi = Math.max(0, ...values);
  const pad = 30;
  const x = (b) => pad + (b * (w - 2 * pad));
  const y = (v) => h - pad - ((v - lo) / (hi - lo || 1)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(pad, y(0));
  ctx.lineTo(w - pad, y(0));
  ctx.stroke();
  ctx.setLineDash([]);

  const count = points[0][key].length;
  for (let k = 0; k < count; k++) {
    ctx.strokeStyle = `hsl(${(k * 360) / count}, 60%, 45%)`;
    ctx.beginPath();
    points.forEach((p, i) => {
      const px = x(p.b);
      const py = y(p[key][k]);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
  }
  ctx.fillStyle = "#222";
  ctx.fillText(hi.toFixed(3), 2, y(hi) + 4);
  ctx.fillText(lo.toFixed(3), 2, y(lo));
  ctx.fillText("b = 0", pad, h - 8);
  ctx.fillText("b = 1", w - pad - 24, h - 8);
}

function show(el, fn) {
  try {
    el.textContent = JSON.stringify(JSON.parse(fn()), null, 2);
    el.classList.remove("neg");
  } catch (e) {
    el.textContent = String(e);
    el.classList.add("neg");
  }
}

async function main() {
  await init();
  $("status").textContent = "Ready.";

  const runSpectra = () => {
    const steps = Number($("spec-steps").value);
    const points = JSON.parse(pt_spectra(0, 1, steps));
    plot(points, $("spec-split").value);
  };
  $("spec-run").addEventListener("click", runSpectra);
  $("spec-split").addEventListener("change", runSpectra);
  runSpectra();

  $("cmp-run").addEventListener("click", () => {
    const [p0, p1] = indices($("cmp-p").value);
    const [q0, q1] = indices($("cmp-q").value);
    show($("cmp-out"), () => compression(Number($("cmp-b").value), $("cmp-split").value, p0, p1, q0, q1));
  });

  $("r2-run").addEventListener("click", () => {
    $("r2-out").textContent = "Searching…";
    // let the message paint before the synchronous search
    setTimeout(() => {
      show($("r2-out"), () =>
        rank2(
          Number($("r2-n").value),
          Number($("r2-a").value),
          $("r2-split").value,
          Number($("r2-restarts").value),
          200,
          BigInt($("r2-seed").value),
        ),
      );
    }, 0);
  });
}

main().catch((e) => {
  $("status").textContent = `Failed to load: ${e}`;
});
