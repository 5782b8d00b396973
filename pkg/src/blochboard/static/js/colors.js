// One palette for everything that colors by class, so panels, charts and
// the heat map always agree.
export const CLASS_COLORS = ["#4477cc", "#ee6677", "#44aa77", "#eeaa33"];
export const MISCLASSIFIED_OUTLINE = "#d2222d";
export const CORRECT_OUTLINE = "#ffffff";
export function classColor(label) {
    return CLASS_COLORS[label % CLASS_COLORS.length];
}
export function classColorAlpha(label, alpha) {
    const hex = classColor(label);
    const r = parseInt(hex.slice(1, 3), 16);
    const g = parseInt(hex.slice(3, 5), 16);
    const b = parseInt(hex.slice(5, 7), 16);
    return `rgba(${r}, ${g}, ${b}, ${alpha})`;
}
/** Phase fraction in [0, 1) as a display color. */
export function hueColor(hue) {
    const deg = Math.round(((hue % 1) + 1) % 1 * 360);
    return `hsl(${deg}, 70%, 55%)`;
}
