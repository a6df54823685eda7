import init, { catalog, coloringNumber, classCount, renderColoring } from "./pkg/tilecolor_demo.js";

const $ = (id) => document.getElementById(id);
let tiling = null;

function status(text, isError = false) {
  $("status").textContent = text;
  $("status").className = isError ? "error" : "";
}

// let the status line repaint before a blocking wasm call
function run(label, f) {
  if (!tiling) return status("select a tiling first", true);
  status(label + "…");
  setTimeout(() => {
    try {
      f();
    } catch (e) {
      status(e.message ?? String(e), true);
    }
  }, 10);
}

function select(row, name) {
  for (const r of $("catalog").children) r.classList.remove("selected");
  row.classList.add("selected");
  tiling = name;
  $("chosen").textContent = name;
  $("picture").innerHTML = "";
  status("");
}

await init();
for (const line of catalog().split("\n")) {
  const cols = line.split("\t");
  const row = document.createElement("tr");
  for (const c of cols) {
    const td = document.createElement("td");
    td.textContent = c;
    row.appendChild(td);
  }
  row.addEventListener("click", () => select(row, cols[0]));
  $("catalog").appendChild(row);
}

$("least").addEventListener("click", () =>
  run("searching subgroups", () => {
    const n = coloringNumber(tiling);
    $("n").value = n;
    status(`${tiling}: least number of colors is ${n}`);
  }));

$("count").addEventListener("click", () =>
  run("enumerating", () => {
    const n = Number($("n").value);
    const k = classCount(tiling, n);
    status(`${tiling}: ${k} inequivalent transitive perfect ${n}-coloring(s)`);
  }));

$("draw").addEventListener("click", () =>
  run("drawing", () => {
    const svg = renderColoring(tiling, Number($("n").value), Number($("class").value), Number($("cells").value));
    $("picture").innerHTML = svg;
    status(`${tiling}, ${$("n").value} colors, class ${$("class").value}`);
  }));
