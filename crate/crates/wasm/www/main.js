import init, { braidMatrix, knotInvariant, compileTarget } from "./pkg/anyon_wasm.js";

const $ = (id) => document.getElementById(id);

function fmt(z) {
  const [re, im] = z;
  const sign = im < 0 ? "-" : "+";
  return `${re.toFixed(6)}${sign}${Math.abs(im).toFixed(6)}i`;
}

function show(out, fn) {
  out.classList.remove("error");
  try {
    out.textContent = fn();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
  }
}

function drawBraid(canvas, word, n) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const letters = word.trim() === "" ? [] : word.trim().split(/\s+/).map(Number);
  if (n < 1 || letters.some((g) => !Number.isInteger(g) || g === 0 || Math.abs(g) >= n)) return;
  const gap = canvas.height / (n + 1);
  const step = canvas.width / (letters.length + 1);
  const y = (k) => gap * (k + 1);
  ctx.lineWidth = 3;
  ctx.lineCap = "round";
  let x = 0;
  const straight = (k, x0, x1) => {
    ctx.beginPath();
    ctx.moveTo(x0, y(k));
    ctx.lineTo(x1, y(k));
    ctx.stroke();
  };
  const curve = (from, to, x0, x1) => {
    ctx.beginPath();
    ctx.moveTo(x0, y(from));
    ctx.bezierCurveTo((x0 + x1) / 2, y(from), (x0 + x1) / 2, y(to), x1, y(to));
    ctx.stroke();
  };
  for (const g of letters) {
    const i = Math.abs(g) - 1;
    const x1 = x + step;
    for (let k = 0; k < n; k++) if (k !== i && k !== i + 1) straight(k, x, x1);
    // Draw the under strand first, then erase a gap and draw the over strand.
    const [under, over] = g > 0 ? [[i + 1, i], [i, i + 1]] : [[i, i + 1], [i + 1, i]];
    ctx.strokeStyle = "#222";
    curve(under[0], under[1], x, x1);
    ctx.strokeStyle = "#fff";
    ctx.lineWidth = 9;
    curve(over[0], over[1], x, x1);
    ctx.lineWidth = 3;
    ctx.strokeStyle = "#222";
    curve(over[0], over[1], x, x1);
    x = x1;
  }
  for (let k = 0; k < n; k++) straight(k, x, canvas.width);
}

await init();

$("b-run").onclick = () => {
  const word = $("b-word").value;
  const n = Number($("b-n").value);
  drawBraid($("b-canvas"), word, n);
  show($("b-out"), () => {
    const r = JSON.parse(braidMatrix(word, n, $("b-total").value));
    const rows = r.matrix.map((row) => row.map(fmt).join("  ")).join("\n");
    return `dim ${r.dim}, unitarity residual ${r.unitarity_residual.toExponential(1)}\n${rows}`;
  });
};

$("k-run").onclick = () => {
  show($("k-out"), () => {
    const r = JSON.parse(knotInvariant($("k-word").value, Number($("k-n").value)));
    return `V = ${fmt([r.re, r.im])}   (writhe ${r.writhe})`;
  });
};

$("c-run").onclick = () => {
  const out = $("c-out");
  out.textContent = "searching...";
  setTimeout(() => {
    show(out, () => {
      const target = new Float64Array($("c-target").value.split(",").map(Number));
      const r = JSON.parse(compileTarget(target, 3, "tau", Number($("c-len").value)));
      return `word: ${r.word || "(empty)"}\ndistance: ${r.distance.toExponential(3)}\nwords explored: ${r.explored}`;
    });
  }, 0);
};

$("b-run").click();
