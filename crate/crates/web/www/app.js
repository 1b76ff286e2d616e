import init, { group_summary, graph_sectors, flux_fusion, s_matrix } from "./pkg/topoqd_web.js";

const $ = (id) => document.getElementById(id);

function spec() {
  const text = $("custom").value.trim();
  return text.length > 0 ? text : $("builtin").value;
}

function table(headers, rows) {
  const head = "<tr>" + headers.map((h) => `<th>${h}</th>`).join("") + "</tr>";
  const body = rows.map((r) => "<tr>" + r.map((c) => `<td>${c}</td>`).join("") + "</tr>").join("");
  return `<table>${head}${body}</table>`;
}

function guard(target, f) {
  try {
    $(target).innerHTML = f();
  } catch (e) {
    $(target).innerHTML = `<p class="error">${e}</p>`;
  }
}

function showSummary() {
  guard("summary", () => {
    const s = JSON.parse(group_summary(spec(), 4));
    const classes = s.classes.map((c) => `${c.label} (${c.size})`).join(", ");
    return `<p>${s.group}: order ${s.order}${s.abelian ? ", abelian" : ""}</p>
      <p>classes: ${classes}</p>
      <p>irrep degrees: ${s.irrep_degrees.join(", ")}</p>` +
      table(["genus", "1", "2", "3", "4"], [["graph sectors", ...s.sector_counts]]);
  });
}

function showSectors() {
  guard("sectors", () => {
    const genus = Number($("genus").value);
    const list = JSON.parse(graph_sectors(spec(), genus));
    const rows = list.map((s) => [`(${s.representative.join(", ")})`, s.d_squared, s.lambda ?? "", s.rho ?? ""]);
    const total = list.reduce((acc, s) => acc + s.d_squared, 0);
    return `<p>${list.length} sectors, total d&sup2; = ${total}</p>` +
      table(["representative", "d²", "λ = C_gh", "ρ = C_[g,h]"], rows);
  });
}

function showFusion() {
  guard("fusion", () => {
    const f = JSON.parse(flux_fusion(spec(), $("mu").value, $("nu").value));
    const rows = f.channels.map((c) => [`(${c.representative.join(", ")})`, c.lambda, c.k, c.rho, c.d_squared, c.p]);
    const dist = (v) => v.map((x) => `${x.class}: ${x.p}`).join(", ");
    return table(["C_(g,h)", "λ", "k", "ρ", "d²", "p"], rows) +
      `<p>P(${f.mu} × ${f.nu} → λ): ${dist(f.by_lambda)}</p><p>Borromean ρ: ${dist(f.by_rho)}</p>`;
  });
}

function color(re, im) {
  const mag = Math.min(1, Math.hypot(re, im) * 2);
  const hue = ((Math.atan2(im, re) * 180) / Math.PI + 360) % 360;
  return `hsl(${hue.toFixed(0)}, 70%, ${(100 - 50 * mag).toFixed(0)}%)`;
}

function showPairing() {
  guard("pairing", () => {
    const manifold = document.querySelector("input[name=manifold]:checked").value;
    const m = JSON.parse(s_matrix(spec(), manifold));
    const head = "<tr><th></th>" + m.cols.map((c) => `<th>${c}</th>`).join("") + "</tr>";
    const body = m.entries.map((row, i) => {
      const cells = row.map(([re, im]) => {
        const title = `${re.toFixed(4)}${im >= 0 ? "+" : ""}${im.toFixed(4)}i`;
        return `<td class="cell" title="${title}" style="background:${color(re, im)}"></td>`;
      });
      return `<tr><th>${m.rows[i]}</th>${cells.join("")}</tr>`;
    });
    return `<p>D_pair = ${m.d_pair.toFixed(6)}, max |S†S − I| = ${m.unitarity_residual.toExponential(2)}.
      Hue = phase, depth = |S|; hover a cell for its value.</p><table>${head}${body.join("")}</table>`;
  });
}

await init();
$("builtin").addEventListener("change", () => { $("custom").value = ""; showSummary(); });
$("custom").addEventListener("change", showSummary);
$("run-sectors").addEventListener("click", showSectors);
$("run-fusion").addEventListener("click", showFusion);
$("run-pairing").addEventListener("click", showPairing);
showSummary();
