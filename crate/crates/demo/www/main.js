import init, { normalForm, counts, certify } from "./pkg/garside_demo.js";

const $ = (id) => document.getElementById(id);

function show(id, json, format) {
  const out = $(id);
  const v = JSON.parse(json);
  out.className = v.error ? "err" : "";
  out.textContent = v.error ? v.error : format(v);
}

await init();

$("nf-go").onclick = () =>
  show("nf-out", normalForm(+$("nf-n").value, $("nf-word").value), (v) =>
    `${v.normal_form}\ninf ${v.inf}  sup ${v.sup}  length ${v.len}  rigid ${v.rigid ?? "n/a"}`);

$("ct-go").onclick = () =>
  show("ct-out", counts(+$("ct-n").value, +$("ct-l").value, $("ct-pat").value), (v) => {
    let head = `${v.vertices} vertices, ${v.edges} edges, growth ${v.gamma.toFixed(9)}`;
    if (v.gamma_w !== null) head += `, avoiding ${v.gamma_w.toFixed(9)}`;
    return `${head}\n\n${v.csv}`;
  });

$("cf-go").onclick = () =>
  show("cf-out", certify(+$("cf-n").value, $("cf-word").value), (v) =>
    `${v.normal_form}\n${v.kind}\n${JSON.stringify(v.detail)}`);
