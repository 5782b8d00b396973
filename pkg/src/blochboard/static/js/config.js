// Client-side twin of the server's config parser. The server is the source
// of truth; this module exists so the form can reject a draft before
// submission with the exact dotted field names the server would return.
// Parity is enforced by tests/config.test.ts against a fixture generated
// from the server parser, so any rule change must land on both sides.
export const VARIANTS = ["compact", "separate"];
export const ENTANGLERS = ["none", "cz", "cnot"];
export const DATASET_KINDS = [
    "circle",
    "annulus",
    "xor",
    "moons",
    "spiral",
    "three_blobs",
    "four_blobs",
];
// class counts each dataset kind supports; the first entry is its default
export const KIND_CLASSES = {
    circle: [2],
    annulus: [2, 3],
    xor: [2],
    moons: [2],
    spiral: [2],
    three_blobs: [3],
    four_blobs: [4],
};
export const LIMITS = {
    maxLayers: 64,
    maxClasses: 4,
    minGridResolution: 8,
    maxGridResolution: 200,
    minSamples: 8,
    maxSamples: 5000,
    maxEpochs: 10000,
};
export function effectiveEntangler(nQubits, entangler) {
    return nQubits === 1 ? "none" : entangler;
}
function isPlainObject(v) {
    return typeof v === "object" && v !== null && !Array.isArray(v);
}
// truthiness as the server's language sees it: empty containers and empty
// strings count as absent, so `"dataset": 0` falls back to defaults silently
function serverTruthy(v) {
    if (v === null || v === undefined)
        return false;
    if (typeof v === "boolean")
        return v;
    if (typeof v === "number")
        return v !== 0;
    if (typeof v === "string")
        return v.length > 0;
    if (Array.isArray(v))
        return v.length > 0;
    if (isPlainObject(v))
        return Object.keys(v).length > 0;
    return true;
}
const INT_STRING = /^[+-]?[0-9]+$/;
// strict decimal or scientific notation; deliberately narrower than the
// server's string parsing only where JSON clients cannot reach (hex,
// underscore separators)
const FLOAT_STRING = /^[+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?$/;
const SPECIAL_FLOAT = /^[+-]?(inf(inity)?|nan)$/i;
const pickInt = (v) => {
    if (typeof v === "boolean")
        return { hit: false };
    if (typeof v === "number") {
        return Number.isInteger(v) ? { hit: true, value: v } : { hit: false };
    }
    if (typeof v === "string") {
        const s = v.trim();
        return INT_STRING.test(s) ? { hit: true, value: Number(s) } : { hit: false };
    }
    return { hit: false };
};
const pickFloat = (v) => {
    if (typeof v === "boolean")
        return { hit: false };
    if (typeof v === "number") {
        return Number.isFinite(v) ? { hit: true, value: v } : { hit: false };
    }
    if (typeof v === "string") {
        const s = v.trim();
        if (SPECIAL_FLOAT.test(s))
            return { hit: false }; // parses server-side, then fails the finite check
        return FLOAT_STRING.test(s) ? { hit: true, value: Number(s) } : { hit: false };
    }
    return { hit: false };
};
function pickChoice(allowed) {
    return (v) => typeof v === "string" && allowed.includes(v)
        ? { hit: true, value: v }
        : { hit: false };
}
function pick(payload, key, picker, fallback, problems, prefix = "") {
    if (!(key in payload) || payload[key] === null || payload[key] === undefined) {
        return fallback;
    }
    const out = picker(payload[key]);
    if (out.hit)
        return out.value;
    problems.push(prefix + key);
    return fallback;
}
function sortedUnknown(payload, known, prefix = "") {
    return Object.keys(payload)
        .filter((k) => !known.includes(k))
        .sort((a, b) => (a < b ? -1 : a > b ? 1 : 0))
        .map((k) => prefix + k);
}
function subObject(payload, key, problems) {
    const raw = payload[key];
    if (!serverTruthy(raw))
        return {};
    if (!isPlainObject(raw)) {
        problems.push(key);
        return {};
    }
    return raw;
}
const TOP_KEYS = [
    "n_qubits",
    "n_layers",
    "n_classes",
    "variant",
    "entangler",
    "seed",
    "grid_resolution",
    "dataset",
    "optimizer",
];
const DATASET_KEYS = ["kind", "n_samples", "seed", "noise", "test_fraction"];
const OPTIMIZER_KEYS = ["learning_rate", "batch_size", "max_epochs"];
/** Range checks applied after coercion; pushes dotted names in server order. */
export function validateParsed(c, problems) {
    if (c.n_qubits !== 1 && c.n_qubits !== 2)
        problems.push("n_qubits");
    if (!Number.isInteger(c.n_layers) || c.n_layers < 1 || c.n_layers > LIMITS.maxLayers) {
        problems.push("n_layers");
    }
    if (c.n_classes < 2 || c.n_classes > LIMITS.maxClasses)
        problems.push("n_classes");
    if (c.seed < 0)
        problems.push("seed");
    if (c.grid_resolution < LIMITS.minGridResolution ||
        c.grid_resolution > LIMITS.maxGridResolution) {
        problems.push("grid_resolution");
    }
    const d = c.dataset;
    if (!KIND_CLASSES[d.kind].includes(c.n_classes))
        problems.push("dataset.kind");
    if (d.n_samples < LIMITS.minSamples || d.n_samples > LIMITS.maxSamples) {
        problems.push("dataset.n_samples");
    }
    if (d.seed < 0)
        problems.push("dataset.seed");
    if (d.noise < 0 || d.noise > 1)
        problems.push("dataset.noise");
    if (!(d.test_fraction > 0 && d.test_fraction < 1))
        problems.push("dataset.test_fraction");
    const o = c.optimizer;
    if (!Number.isFinite(o.learning_rate) || o.learning_rate < 0) {
        problems.push("optimizer.learning_rate");
    }
    if (o.batch_size < 1)
        problems.push("optimizer.batch_size");
    if (o.max_epochs < 1 || o.max_epochs > LIMITS.maxEpochs)
        problems.push("optimizer.max_epochs");
}
export function parseSessionConfig(payload) {
    if (payload === null || payload === undefined)
        payload = {};
    if (!isPlainObject(payload))
        return { ok: false, fields: ["config"] };
    const problems = [];
    problems.push(...sortedUnknown(payload, TOP_KEYS));
    const n_qubits = pick(payload, "n_qubits", pickInt, 1, problems);
    const n_layers = pick(payload, "n_layers", pickInt, 4, problems);
    const n_classes = pick(payload, "n_classes", pickInt, 2, problems);
    const variant = pick(payload, "variant", pickChoice(VARIANTS), "compact", problems);
    const entangler = pick(payload, "entangler", pickChoice(ENTANGLERS), "cz", problems);
    const seed = pick(payload, "seed", pickInt, 0, problems);
    const grid_resolution = pick(payload, "grid_resolution", pickInt, 40, problems);
    const rawDataset = subObject(payload, "dataset", problems);
    problems.push(...sortedUnknown(rawDataset, DATASET_KEYS, "dataset."));
    const dataset = {
        kind: pick(rawDataset, "kind", pickChoice(DATASET_KINDS), "circle", problems, "dataset."),
        n_samples: pick(rawDataset, "n_samples", pickInt, 200, problems, "dataset."),
        seed: pick(rawDataset, "seed", pickInt, 0, problems, "dataset."),
        noise: pick(rawDataset, "noise", pickFloat, 0.0, problems, "dataset."),
        test_fraction: pick(rawDataset, "test_fraction", pickFloat, 0.25, problems, "dataset."),
    };
    const rawOptimizer = subObject(payload, "optimizer", problems);
    problems.push(...sortedUnknown(rawOptimizer, OPTIMIZER_KEYS, "optimizer."));
    const optimizer = {
        learning_rate: pick(rawOptimizer, "learning_rate", pickFloat, 0.05, problems, "optimizer."),
        batch_size: pick(rawOptimizer, "batch_size", pickInt, 16, problems, "optimizer."),
        max_epochs: pick(rawOptimizer, "max_epochs", pickInt, 100, problems, "optimizer."),
    };
    const config = {
        n_qubits,
        n_layers,
        n_classes,
        variant,
        entangler,
        seed,
        grid_resolution,
        dataset,
        optimizer,
    };
    validateParsed(config, problems);
    if (problems.length > 0) {
        const seen = [...new Set(problems)];
        return { ok: false, fields: seen };
    }
    return { ok: true, config };
}
/** The config as the server echoes it back (entangler normalized). */
export function configEcho(c) {
    return { ...c, entangler: effectiveEntangler(c.n_qubits, c.entangler) };
}
