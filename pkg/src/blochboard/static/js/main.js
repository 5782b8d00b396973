// Application wiring: the config form creates sessions, the stream feeds a
// coalesced render path, and the run buttons map straight to control commands.
import { ApiError, control, createSession } from "./api.js";
import { LineChart } from "./charts.js";
import { Coalescer } from "./coalesce.js";
import { DATASET_KINDS, KIND_CLASSES, parseSessionConfig } from "./config.js";
import { classColor } from "./colors.js";
import { HeatmapPanel } from "./heatmap.js";
import { MetricHistory } from "./metrics.js";
import { StatePanel } from "./panels.js";
import { FrameStream } from "./sse.js";
const MAX_PANELS = 12;
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing element #${id}`);
    return node;
}
const statusDot = el("status-dot");
const statusText = el("status-text");
const sessionLabel = el("session-label");
const banner = el("banner");
const fieldErrors = el("field-errors");
const panelsRow = el("panels-row");
const panelsNote = el("panels-note");
const chartsRow = el("charts-row");
const classSummaryEl = el("class-summary");
const runStats = el("run-stats");
const tooltip = el("tooltip");
const kindSel = el("f-kind");
const classesSel = el("f-classes");
const btnStart = el("btn-start");
const btnPause = el("btn-pause");
const btnStepEpoch = el("btn-step-epoch");
const btnStepBatch = el("btn-step-batch");
const btnReset = el("btn-reset");
// fields whose change means a different model or dataset, hence a new session
const NEW_SESSION_IDS = [
    "f-kind",
    "f-classes",
    "f-samples",
    "f-noise",
    "f-testfrac",
    "f-dataseed",
    "f-qubits",
    "f-layers",
    "f-variant",
    "f-entangler",
    "f-seed",
    "f-gridres",
    "f-epochs",
];
// fields the running session absorbs live
const LIVE_IDS = ["f-lr", "f-batch"];
const lossBox = document.createElement("div");
lossBox.className = "chart";
chartsRow.appendChild(lossBox);
const lossChart = new LineChart(lossBox, [{ key: "train_loss", label: "train loss", color: "#4477cc" }], { title: "loss per epoch" });
const accBox = document.createElement("div");
accBox.className = "chart";
chartsRow.appendChild(accBox);
const accChart = new LineChart(accBox, [
    { key: "train_accuracy", label: "train acc", color: "#44aa77" },
    { key: "test_accuracy", label: "test acc", color: "#ee6677" },
], { fixedDomain: [0, 1.02], title: "accuracy per epoch" });
const heatmap = new HeatmapPanel(el("heatmap"));
let sessionId = null;
let lastFrame = null;
let panelsKey = "";
let layerPanels = [];
let finalPanel = null;
const history = new MetricHistory();
function showTooltip(text, x, y) {
    tooltip.textContent = text;
    tooltip.classList.remove("hidden");
    tooltip.style.left = `${x + 14}px`;
    tooltip.style.top = `${y + 14}px`;
}
function hideTooltip() {
    tooltip.classList.add("hidden");
}
function setStatus(connected) {
    statusDot.className = `dot ${connected ? "on" : "off"}`;
    statusText.textContent = connected ? "streaming" : sessionId ? "reconnecting" : "disconnected";
}
function showBanner(text) {
    banner.textContent = text;
    banner.classList.remove("hidden");
}
function clearBanner() {
    banner.classList.add("hidden");
}
function showFieldErrors(fields) {
    for (const input of document.querySelectorAll("#controls [data-field]")) {
        input.classList.remove("invalid");
    }
    if (fields.length === 0) {
        fieldErrors.classList.add("hidden");
        return;
    }
    for (const name of fields) {
        document.querySelector(`#controls [data-field="${name}"]`)?.classList.add("invalid");
    }
    fieldErrors.textContent = `rejected: ${fields.join(", ")}`;
    fieldErrors.classList.remove("hidden");
}
function reportError(err) {
    if (err instanceof ApiError) {
        if (err.fields.length > 0)
            showFieldErrors(err.fields);
        showBanner(err.message);
        return;
    }
    showBanner(String(err));
}
function panelHover(hover, x, y) {
    if (!hover || !lastFrame) {
        hideTooltip();
        return;
    }
    const frame = lastFrame;
    const sample = frame.dataset.train.points[frame.sample_indices[hover.cloudIndex]];
    const lines = [
        sample ? `sample (${sample[0].toFixed(3)}, ${sample[1].toFixed(3)})` : "sample ?",
        `class ${hover.point.label}${hover.point.correct ? "" : " (misclassified)"}`,
        `score ${hover.point.score.toFixed(3)}`,
    ];
    if (frame.config_echo.n_qubits === 2) {
        lines.push(`concurrence ${hover.point.size.toFixed(3)}`);
    }
    showTooltip(lines.join("\n"), x, y);
}
heatmap.onHover = (info, x, y) => {
    if (!info) {
        hideTooltip();
        return;
    }
    showTooltip(`(${info.x.toFixed(2)}, ${info.y.toFixed(2)})\n` +
        `predicted ${info.predicted} @ ${info.score.toFixed(3)}\ntruth ${info.truth}`, x, y);
};
function ensurePanels(frame) {
    const kind = frame.config_echo.n_qubits === 2 ? "tetra" : "sphere";
    const shown = Math.min(frame.layers.length, MAX_PANELS);
    const key = `${kind}:${shown}:${frame.layers.length}`;
    if (key === panelsKey)
        return;
    panelsKey = key;
    panelsRow.innerHTML = "";
    layerPanels = [];
    for (let i = 0; i < shown; i++) {
        const panel = new StatePanel(panelsRow, `layer ${i + 1}`, kind);
        panel.onHover = panelHover;
        layerPanels.push(panel);
    }
    finalPanel = new StatePanel(panelsRow, "final state", kind);
    finalPanel.root.classList.add("final");
    finalPanel.onHover = panelHover;
    if (frame.layers.length > MAX_PANELS) {
        panelsNote.textContent = `showing the first ${MAX_PANELS} of ${frame.layers.length} layer views`;
        panelsNote.classList.remove("hidden");
    }
    else {
        panelsNote.classList.add("hidden");
    }
}
function renderRunStats(frame) {
    const m = frame.metrics;
    const batch = m.batch_loss === null ? "" : ` | batch loss ${m.batch_loss.toFixed(4)}`;
    runStats.textContent =
        `${frame.state} | epoch ${frame.epoch}/${frame.hyper.max_epochs} | step ${frame.step}` +
            ` | loss ${m.train_loss.toFixed(4)}${batch}` +
            ` | train ${(m.train_accuracy * 100).toFixed(1)}%` +
            ` | test ${(m.test_accuracy * 100).toFixed(1)}%`;
}
function renderClassSummary(frame) {
    classSummaryEl.innerHTML = "";
    for (const c of frame.class_summary) {
        const row = document.createElement("div");
        row.className = "class-row";
        const swatch = document.createElement("span");
        swatch.className = "class-swatch";
        swatch.style.background = classColor(c.label);
        const text = document.createElement("span");
        text.textContent = `class ${c.label}: ${c.train_count} train / ${c.test_count} test`;
        const target = document.createElement("span");
        target.className = "class-target";
        target.textContent = `target (${c.target_xyz.map((v) => v.toFixed(2)).join(", ")})`;
        row.append(swatch, text, target);
        classSummaryEl.appendChild(row);
    }
}
function updateButtons(frame) {
    const running = frame.state === "running";
    const finished = frame.state === "finished";
    btnStart.disabled = running || finished;
    btnPause.disabled = !running;
    btnStepEpoch.disabled = running || finished;
    btnStepBatch.disabled = running || finished;
    btnReset.disabled = false;
}
// every visible surface updates from the same frame object
function renderFrame(frame) {
    if (sessionId !== null && frame.session_id !== sessionId)
        return;
    lastFrame = frame;
    ensurePanels(frame);
    for (let i = 0; i < layerPanels.length; i++) {
        layerPanels[i].render(frame.layers[i].points, []);
    }
    finalPanel?.render(frame.final.points, frame.class_summary);
    heatmap.render(frame);
    history.consume(frame);
    lossChart.render(history.points);
    accChart.render(history.points);
    renderRunStats(frame);
    renderClassSummary(frame);
    updateButtons(frame);
}
const coalescer = new Coalescer(renderFrame, (cb) => requestAnimationFrame(cb));
const stream = new FrameStream((frame) => coalescer.push(frame), setStatus, (err) => showBanner(`skipped a malformed frame: ${err instanceof Error ? err.message : String(err)}`));
async function sendCommand(command, extras = {}) {
    if (!sessionId)
        return;
    try {
        const ack = await control(sessionId, command, extras);
        clearBanner();
        coalescer.push(ack);
    }
    catch (err) {
        reportError(err);
    }
}
function fieldValue(id) {
    return el(id).value.trim();
}
// values go over the wire as entered; client and server share the coercion rules
function formPayload() {
    return {
        n_qubits: fieldValue("f-qubits"),
        n_layers: fieldValue("f-layers"),
        n_classes: fieldValue("f-classes"),
        variant: fieldValue("f-variant"),
        entangler: fieldValue("f-entangler"),
        seed: fieldValue("f-seed"),
        grid_resolution: fieldValue("f-gridres"),
        dataset: {
            kind: fieldValue("f-kind"),
            n_samples: fieldValue("f-samples"),
            seed: fieldValue("f-dataseed"),
            noise: fieldValue("f-noise"),
            test_fraction: fieldValue("f-testfrac"),
        },
        optimizer: {
            learning_rate: fieldValue("f-lr"),
            batch_size: fieldValue("f-batch"),
            max_epochs: fieldValue("f-epochs"),
        },
    };
}
let creating = false;
async function startNewSession() {
    if (creating)
        return;
    const payload = formPayload();
    const parsed = parseSessionConfig(payload);
    if (!parsed.ok) {
        showFieldErrors(parsed.fields);
        return;
    }
    showFieldErrors([]);
    creating = true;
    try {
        const res = await createSession(payload);
        clearBanner();
        const previous = sessionId;
        sessionId = res.session_id;
        sessionLabel.textContent = res.session_id;
        history.run = -1;
        history.points = [];
        stream.open(res.session_id);
        renderFrame(res.frame);
        // the replaced session stays on the server, just not ticking
        if (previous)
            void control(previous, "pause").catch(() => undefined);
    }
    catch (err) {
        reportError(err);
    }
    finally {
        creating = false;
    }
}
function onHyperChange() {
    if (!sessionId)
        return;
    const lrRaw = fieldValue("f-lr");
    const batchRaw = fieldValue("f-batch");
    const lr = Number(lrRaw);
    const batch = Number(batchRaw);
    const bad = [];
    if (lrRaw === "" || !Number.isFinite(lr) || lr < 0)
        bad.push("optimizer.learning_rate");
    if (batchRaw === "" || !Number.isInteger(batch) || batch < 1)
        bad.push("optimizer.batch_size");
    showFieldErrors(bad);
    if (bad.length > 0)
        return;
    void sendCommand("update_hyper", { lr, batch_size: batch });
}
function refreshClassOptions() {
    const allowed = KIND_CLASSES[kindSel.value] ?? [2];
    const current = Number(classesSel.value);
    classesSel.innerHTML = "";
    for (const n of allowed) {
        const opt = document.createElement("option");
        opt.value = String(n);
        opt.textContent = String(n);
        classesSel.appendChild(opt);
    }
    classesSel.value = String(allowed.includes(current) ? current : allowed[0]);
}
function init() {
    for (const kind of DATASET_KINDS) {
        const opt = document.createElement("option");
        opt.value = kind;
        opt.textContent = kind;
        kindSel.appendChild(opt);
    }
    kindSel.value = "circle";
    refreshClassOptions();
    for (const id of NEW_SESSION_IDS) {
        el(id).addEventListener("change", () => {
            if (id === "f-kind")
                refreshClassOptions();
            void startNewSession();
        });
    }
    for (const id of LIVE_IDS) {
        el(id).addEventListener("change", onHyperChange);
    }
    el("btn-new").addEventListener("click", () => void startNewSession());
    btnStart.addEventListener("click", () => void sendCommand("start"));
    btnPause.addEventListener("click", () => void sendCommand("pause"));
    btnStepEpoch.addEventListener("click", () => void sendCommand("step_epoch"));
    btnStepBatch.addEventListener("click", () => void sendCommand("step_batch"));
    btnReset.addEventListener("click", () => void sendCommand("reset"));
    void startNewSession();
}
init();
