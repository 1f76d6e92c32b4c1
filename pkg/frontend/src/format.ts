/** Small text formatting helpers shared by the panels. */

export function tooltipText(path: string, busFactor: number | null): string {
  const name = path || "/";
  const label = busFactor === null ? "Not Applicable" : `bus factor ${busFactor}`;
  return `${name} — ${label}`;
}

export function formatBytes(bytes: number): string {
  if (bytes < 1024) return `${bytes} B`;
  if (bytes < 1024 * 1024) return `${(bytes / 1024).toFixed(1)} KB`;
  return `${(bytes / (1024 * 1024)).toFixed(1)} MB`;
}

export function formatShare(share: number): string {
  return `${(share * 100).toFixed(1)}%`;
}

export function formatDelta(delta: number): string {
  if (delta > 0) return `+${delta}`;
  return String(delta);
}
