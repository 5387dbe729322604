import init, { decompose, polygon_summands, dense_approx } from "./pkg/goldbach_wasm.js";

const $ = (id) => document.getElementById(id);

function show(el, text, isError) {
  el.textContent = text;
  el.classList.toggle("error", !!isError);
}

function onSubmit(formId, handler) {
  $(formId).addEventListener("submit", (ev) => {
    ev.preventDefault();
    handler();
  });
}

function runDecompose() {
  const r = JSON.parse(decompose($("poly").value, $("vars").value, $("field").value, $("mode").value));
  if (!r.ok) {
    show($("decompose-out"), r.error, true);
    $("decompose-json").textContent = "";
    return;
  }
  const status = r.certified ? "certificates verified" : "certification FAILED:\n" + r.failures.join("\n");
  show($("decompose-out"), r.report + "\n" + status, !r.certified);
  $("decompose-json").textContent = JSON.stringify(r.document, null, 2);
}

// draws hull and, when present, the two summands side by side
function drawPolygons(groups) {
  const svg = $("polygon-svg");
  svg.replaceChildren();
  const colors = ["#36c", "#c63", "#393"];
  const cell = 180 / Math.max(...groups.flat(2).map(Number), 1) * 0.9;
  groups.forEach((pts, g) => {
    if (pts.length === 0) return;
    const ox = 10 + g * 160, oy = 190;
    const xy = pts.map(([x, y]) => [ox + Number(x) * cell * 0.8, oy - Number(y) * cell * 0.8]);
    const cx = xy.reduce((s, p) => s + p[0], 0) / xy.length;
    const cy = xy.reduce((s, p) => s + p[1], 0) / xy.length;
    xy.sort((a, b) => Math.atan2(a[1] - cy, a[0] - cx) - Math.atan2(b[1] - cy, b[0] - cx));
    const poly = document.createElementNS("http://www.w3.org/2000/svg", "polygon");
    poly.setAttribute("points", xy.map((p) => p.join(",")).join(" "));
    poly.setAttribute("fill", colors[g] + "4");
    poly.setAttribute("stroke", colors[g]);
    poly.setAttribute("stroke-width", "2");
    svg.appendChild(poly);
  });
}

function runPolygon() {
  const r = JSON.parse(polygon_summands($("points").value));
  if (!r.ok) {
    show($("polygon-out"), r.error, true);
    drawPolygons([]);
    return;
  }
  const fmt = (rows) => rows.map((p) => "(" + p.join(", ") + ")").join(" ");
  let text = "hull vertices: " + fmt(r.hull) + "\n" + r.verdict;
  if (r.verdict === "decomposable") {
    text += "\n  A = conv " + fmt(r.a) + "\n  B = conv " + fmt(r.b);
  } else if (r.reason) {
    text += " (" + r.reason + ")";
  }
  show($("polygon-out"), text, false);
  drawPolygons(r.verdict === "decomposable" ? [r.hull, r.a, r.b] : [r.hull]);
}

function runApprox() {
  const r = JSON.parse(dense_approx($("gens").value, $("x0").value, $("y0").value));
  if (!r.ok) {
    show($("approx-out"), r.error, true);
    return;
  }
  show(
    $("approx-out"),
    `${r.value} = ${r.count} × ${r.summand}\n` +
      `p = ${r.p} (a prime outside S), summand p / ${r.n0}^${r.e}, n = ${r.n}`,
    false,
  );
}

await init();
onSubmit("decompose-form", runDecompose);
onSubmit("polygon-form", runPolygon);
onSubmit("approx-form", runApprox);
runDecompose();
runPolygon();
runApprox();
