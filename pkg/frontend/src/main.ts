/**
 * DOM wiring for the live experiment console.
 *
 * Config screen: picks p0_h1 from the reference curve's violation fraction
 * and p0_h0 from a reference campaign, so every plan is provenance-stamped.
 * Entry screen: four bit toggles plus the selection radios (no default -
 * the selection is the experiment's deliberate act), a deficit strip, and
 * the verdict badge, all refreshed from /summary after every post.
 */
import { ApiError, ConsoleApi, SessionSummary } from "./api.js";
import {
  EMPTY_FORM,
  EntryFormState,
  deficitStrip,
  missingFields,
  planRequestValid,
  progressView,
  toPayload,
  verdictView,
} from "./state.js";

const api = new ConsoleApi("");

let summary: SessionSummary | null = null;
let form: EntryFormState = { ...EMPTY_FORM };
let serverUnreachable = false;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function escapeHtml(s: string): string {
  const div = document.createElement("div");
  div.textContent = s;
  return div.innerHTML;
}

function renderVerdict(): void {
  const view = verdictView(summary, serverUnreachable);
  const badge = el<HTMLDivElement>("verdict-badge");
  badge.className = `badge ${view.badge}${view.stale ? " stale" : ""}`;
  badge.textContent = view.label + (view.stale ? " (stale)" : "");
  el("verdict-detail").textContent = view.detail;
}

function renderPlan(): void {
  const panel = el("plan-panel");
  if (!summary) {
    panel.innerHTML = "";
    return;
  }
  const p = summary.plan;
  panel.innerHTML = `
    <table class="plan-table"><tbody>
      <tr><td>p0 (null)</td><td>${p.p0_h0}</td></tr>
      <tr><td>p0 (alternative)</td><td>${p.p0_h1}</td></tr>
      <tr><td>alpha</td><td>${p.alpha}</td></tr>
      <tr><td>gamma</td><td>${p.gamma}</td></tr>
      <tr><td>N_req</td><td>${p.n_req}</td></tr>
      <tr><td>k0</td><td>${p.k0}</td></tr>
    </tbody></table>
    <p class="variant">estimator: ${escapeHtml(summary.estimator_variant.scheme)},
      domain ${escapeHtml(summary.estimator_variant.selection_domain)}</p>`;
}

function renderStrip(): void {
  const strip = el("deficit-strip");
  if (!summary) {
    strip.innerHTML = "";
    return;
  }
  const rows = deficitStrip(summary)
    .map(
      (r) =>
        `<tr class="${r.positive ? "positive" : ""}">
           <td>${r.experiment}</td><td>${r.deficitBits}</td></tr>`,
    )
    .join("");
  strip.innerHTML = `<table><thead><tr><th>experiment</th>
    <th>deficit (bits)</th></tr></thead><tbody>${rows}</tbody></table>`;
  el("progress").textContent = progressView(summary).label;
  el<HTMLAnchorElement>("export-link").href = api.exportUrl(
    summary.session_id,
  );
  el("ke-readout").textContent = `k_e = ${summary.k_e}`;
}

function renderAll(): void {
  renderVerdict();
  renderPlan();
  renderStrip();
  el("entry-section").style.display = summary ? "block" : "none";
}

function formError(message: string, fields: string[] = []): void {
  el("entry-error").textContent = message;
  document
    .querySelectorAll(".field")
    .forEach((n) => n.classList.remove("invalid"));
  for (const f of fields) {
    const node = document.querySelector(`.field[data-field="${f}"]`);
    if (node) node.classList.add("invalid");
  }
}

function readToggle(name: string): number | null {
  const checked = document.querySelector<HTMLInputElement>(
    `input[name="${name}"]:checked`,
  );
  return checked ? Number(checked.value) : null;
}

function readSelection(name: string): string | null {
  const checked = document.querySelector<HTMLInputElement>(
    `input[name="${name}"]:checked`,
  );
  return checked ? checked.value : null;
}

function collectForm(): EntryFormState {
  return {
    a: readToggle("bit-a"),
    a_prime: readToggle("bit-a-prime"),
    b: readToggle("bit-b"),
    b_prime: readToggle("bit-b-prime"),
    sel_a: readSelection("sel-a") as EntryFormState["sel_a"],
    sel_b: readSelection("sel-b") as EntryFormState["sel_b"],
  };
}

function clearForm(): void {
  document
    .querySelectorAll<HTMLInputElement>("#entry-form input[type=radio]")
    .forEach((n) => (n.checked = false));
  form = { ...EMPTY_FORM };
}

async function submitOutcome(): Promise<void> {
  if (!summary) return;
  form = collectForm();
  const missing = missingFields(form);
  if (missing.length > 0) {
    formError(`complete every field: ${missing.join(", ")}`, missing);
    return; // client-side block, no request
  }
  formError("");
  const payload = toPayload(form);
  const experiment = summary.current_experiment;
  try {
    summary = await api.postOutcome(summary.session_id, experiment, payload);
    serverUnreachable = false;
    clearForm();
  } catch (err) {
    if (err instanceof ApiError) {
      formError(`rejected (${err.status}): ${err.message}`);
    } else {
      serverUnreachable = true;
    }
  }
  renderAll();
}

async function createSession(): Promise<void> {
  const n = Number(el<HTMLInputElement>("cfg-n").value);
  const p0 = Number(el<HTMLInputElement>("cfg-p0").value);
  const p1 = Number(el<HTMLInputElement>("cfg-p1").value);
  const alpha = Number(el<HTMLInputElement>("cfg-alpha").value);
  const gamma = Number(el<HTMLInputElement>("cfg-gamma").value);
  const problem = planRequestValid(n, p0, p1, alpha, gamma);
  if (problem) {
    el("config-error").textContent = problem;
    return;
  }
  el("config-error").textContent = "";
  try {
    summary = await api.createSession({ n, p0_h0: p0, p0_h1: p1, alpha, gamma });
    serverUnreachable = false;
  } catch (err) {
    el("config-error").textContent = String(err);
  }
  renderAll();
}

async function fetchReferenceProbs(): Promise<void> {
  const n = Number(el<HTMLInputElement>("cfg-n").value) || 12;
  try {
    const [p1, p0] = await Promise.all([
      api.violationFraction(),
      api.nullRate(n, 10000, 2026),
    ]);
    el<HTMLInputElement>("cfg-p1").value = p1.toFixed(4);
    el<HTMLInputElement>("cfg-p0").value = p0.toFixed(4);
    el("config-note").textContent =
      `p1 from the reference curve, p0 from a ${n}-outcome reference campaign`;
  } catch (err) {
    el("config-error").textContent = String(err);
  }
}

async function refreshSummary(): Promise<void> {
  if (!summary) return;
  try {
    summary = await api.summary(summary.session_id);
    serverUnreachable = false;
  } catch {
    serverUnreachable = true; // keep the stale badge visible
  }
  renderAll();
}

export function boot(): void {
  el("create-session").addEventListener("click", () => void createSession());
  el("fetch-probs").addEventListener("click", () => void fetchReferenceProbs());
  el("submit-outcome").addEventListener("click", () => void submitOutcome());
  setInterval(() => void refreshSummary(), 5000);
  renderAll();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
