import init, { decide, solve, randomInstance } from "./pkg/pph_demo.js";

const $ = (id) => document.getElementById(id);

function show(verdict, cls, text) {
  $("verdict").textContent = verdict;
  $("verdict").className = cls;
  $("output").textContent = text;
}

function guarded(action) {
  return () => {
    try {
      action();
    } catch (err) {
      show(String(err.message ?? err), "error", "");
    }
  };
}

await init();

$("decide").addEventListener("click", guarded(() => {
  const d = decide($("input").value, $("directed").checked);
  const note = d.routes_agree ? "" : "\n(decision routes disagree)";
  show(d.verdict, d.admits ? "yes" : "no", "Resolution graphs\n" + d.graphs + note);
}));

$("solve").addEventListener("click", guarded(() => {
  const s = solve($("input").value, $("directed").checked);
  show("YES", "yes", "Haplotypes\n" + s.haplotypes + "\nTree\n" + s.tree + "\nDOT\n" + s.dot);
}));

$("generate").addEventListener("click", guarded(() => {
  $("input").value = randomInstance(Number($("seed").value), Number($("rows").value), Number($("cols").value));
  show("", "", "");
}));
