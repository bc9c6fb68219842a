import init, { difference_table, extremal_series, witness_certificate } from "./pkg/unidiff_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guard(out, f) {
  out.classList.remove("err");
  try {
    f();
  } catch (e) {
    out.textContent = String(e);
    out.classList.add("err");
  }
}

function showTable() {
  const out = $("t-out");
  const grid = $("t-grid");
  grid.replaceChildren();
  guard(out, () => {
    const t = JSON.parse(difference_table(num("t-p"), $("t-set").value, $("t-sums").checked));
    const op = t.kind === "sum" ? "+" : "-";
    out.textContent = t.witness
      ? `A = {${t.elements.join(", ")}}: unique ${t.kind} ${t.witness.x} = ${t.witness.a} ${op} ${t.witness.b}`
      : `A = {${t.elements.join(", ")}} has no unique ${t.kind}`;
    t.counts.forEach((c, x) => {
      const d = document.createElement("div");
      d.className = "cell" + (c === 1 ? " unique" : c === 0 ? " zero" : "");
      d.title = `x = ${x}`;
      d.textContent = `${x}:${c}`;
      grid.append(d);
    });
  });
}

function drawChart(f, g) {
  const cv = $("s-chart");
  const ctx = cv.getContext("2d");
  const W = cv.width, H = cv.height, pad = 36;
  ctx.clearRect(0, 0, W, H);
  const ps = f.map((r) => r.p);
  const all = [...f, ...g].flatMap((r) => [r.value, r.reference]);
  const xmax = Math.max(...ps), ymax = Math.ceil(Math.max(...all)) + 1;
  const X = (p) => pad + ((W - 2 * pad) * p) / xmax;
  const Y = (v) => H - pad - ((H - 2 * pad) * v) / ymax;

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, H - pad);
  ctx.lineTo(W - pad / 2, H - pad);
  ctx.stroke();
  for (let v = 0; v <= ymax; v += 2) ctx.fillText(String(v), 8, Y(v) + 4);
  for (const p of ps) ctx.fillText(String(p), X(p) - 6, H - pad + 14);

  const line = (rows, key, colour, dashed) => {
    ctx.strokeStyle = colour;
    ctx.setLineDash(dashed ? [4, 4] : []);
    ctx.beginPath();
    rows.forEach((r, i) => (i ? ctx.lineTo : ctx.moveTo).call(ctx, X(r.p), Y(r[key])));
    ctx.stroke();
    ctx.setLineDash([]);
    if (dashed) return;
    for (const r of rows) {
      ctx.fillStyle = colour;
      ctx.beginPath();
      ctx.arc(X(r.p), Y(r.value), 3.5, 0, 2 * Math.PI);
      r.complete ? ctx.fill() : ctx.stroke();
    }
  };
  line(f, "value", "#1565c0", false);
  line(f, "reference", "#1565c0", true);
  line(g, "value", "#c62828", false);
  line(g, "reference", "#c62828", true);

  const legend = [
    ["#1565c0", "f(p)   dashed: log2 p"],
    ["#c62828", "g(p)   dashed: 2 log3 p"],
  ];
  legend.forEach(([c, s], i) => {
    ctx.fillStyle = c;
    ctx.fillText(s, pad + 10, pad / 2 + 14 * (i + 1));
  });
}

function showSeries() {
  const out = $("s-out");
  out.textContent = "computing...";
  // let the status line paint before the search blocks the thread
  setTimeout(() =>
    guard(out, () => {
      const f = JSON.parse(extremal_series(false, num("s-n"), num("s-budget")));
      const g = JSON.parse(extremal_series(true, num("s-n"), num("s-budget")));
      const partial = [...f, ...g].filter((r) => !r.complete).length;
      out.textContent = partial
        ? `${partial} value(s) are lower bounds (budget reached); shown as hollow points`
        : "all values exact";
      drawChart(f, g);
    }),
  );
}

function showCertificate() {
  const out = $("c-out");
  const pre = $("c-json");
  pre.textContent = "";
  guard(out, () => {
    const r = JSON.parse(witness_certificate(num("c-p"), num("c-size"), 5000000));
    if (r === null) {
      out.textContent = "every symmetric set of this size has a unique difference";
      return;
    }
    const c = r.certificate;
    out.textContent =
      `A = {${r.set.join(", ")}}: rank ${c.rank}, d_r = ${c.diagonal[c.diagonal.length - 1]}, ` +
      `p | d_r: ${c.divisibility_verdict}, ${c.sampled_minors.length} minor(s) ` +
      `${c.minors_exhaustive ? "(all)" : "(sampled)"} divisible by p: ` +
      c.sampled_minors.every((m) => m.divisible);
    pre.textContent = JSON.stringify(c, null, 1);
  });
}

await init();
$("t-go").onclick = showTable;
$("s-go").onclick = showSeries;
$("c-go").onclick = showCertificate;
showTable();
