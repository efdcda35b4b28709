// Density color scale: white for 0 up to full red at the scale maximum.
// The maximum is the 95th percentile of leaf densities, clamped, so one
// extreme artifact cannot wash out the rest of the map.

export function percentile95(values: number[]): number {
  if (values.length === 0) return 0;
  const sorted = [...values].sort((a, b) => a - b);
  const index = Math.min(sorted.length - 1, Math.ceil(0.95 * sorted.length) - 1);
  return sorted[Math.max(index, 0)];
}

export function densityColor(density: number, scaleMax: number): string {
  const max = scaleMax > 0 ? scaleMax : 1;
  const t = Math.min(Math.max(density / max, 0), 1);
  const green = Math.round(255 - 195 * t);
  const blue = Math.round(255 - 210 * t);
  return `rgb(255, ${green}, ${blue})`;
}
