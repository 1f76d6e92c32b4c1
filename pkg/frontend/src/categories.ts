/** Bus factor category bands: defaults, validation, lookup, persistence.
 *
 * Recoloring is entirely client-side; no server round trip is ever needed to
 * change ranges or colors.
 */

export interface CategoryRange {
  label: string;
  color: string;
  minBf: number;
  maxBf: number | null; // null = unbounded
}

export interface CategoryConfig {
  ranges: CategoryRange[];
  notApplicableColor: string;
}

export const NOT_APPLICABLE_LABEL = "Not Applicable";

export const DEFAULT_CATEGORIES: CategoryConfig = {
  ranges: [
    { label: "Dangerous", color: "#d64045", minBf: 1, maxBf: 1 },
    { label: "Low", color: "#e9b44c", minBf: 2, maxBf: 2 },
    { label: "OK", color: "#4c9a6a", minBf: 3, maxBf: null },
  ],
  notApplicableColor: "#9aa0a6",
};

const HEX_COLOR = /^#[0-9a-fA-F]{6}$/;

/** Returns an error message, or null when the config is usable. */
export function validateCategories(config: CategoryConfig): string | null {
  if (config.ranges.length === 0) return "at least one category range is required";
  const labels = new Set(config.ranges.map((r) => r.label));
  if (labels.size !== config.ranges.length) return "category labels must be unique";
  for (const r of config.ranges) {
    if (!HEX_COLOR.test(r.color)) return `bad color for ${r.label}`;
    if (r.maxBf !== null && r.maxBf < r.minBf) return `empty range for ${r.label}`;
  }
  const ordered = [...config.ranges].sort((a, b) => a.minBf - b.minBf);
  if (ordered[0].minBf !== 1) return "ranges must start at bus factor 1";
  for (let i = 0; i + 1 < ordered.length; i++) {
    const prev = ordered[i];
    const next = ordered[i + 1];
    if (prev.maxBf === null) return `range ${prev.label} is unbounded but not last`;
    if (next.minBf !== prev.maxBf + 1)
      return `ranges ${prev.label} and ${next.label} overlap or leave a gap`;
  }
  if (ordered[ordered.length - 1].maxBf !== null) return "the last range must be unbounded";
  return null;
}

/** Category of a bus factor value; simulated 0 clamps to the lowest band. */
export function categoryFor(
  busFactor: number | null,
  config: CategoryConfig,
): { label: string; color: string } {
  if (busFactor === null) {
    return { label: NOT_APPLICABLE_LABEL, color: config.notApplicableColor };
  }
  const ordered = [...config.ranges].sort((a, b) => a.minBf - b.minBf);
  for (const r of ordered) {
    if (busFactor >= r.minBf && (r.maxBf === null || busFactor <= r.maxBf)) {
      return { label: r.label, color: r.color };
    }
  }
  return { label: ordered[0].label, color: ordered[0].color };
}

const STORAGE_KEY = "busfactor.categories";

export function loadCategories(storage: Storage): CategoryConfig {
  const raw = storage.getItem(STORAGE_KEY);
  if (!raw) return DEFAULT_CATEGORIES;
  try {
    const parsed = JSON.parse(raw) as CategoryConfig;
    return validateCategories(parsed) === null ? parsed : DEFAULT_CATEGORIES;
  } catch {
    return DEFAULT_CATEGORIES;
  }
}

export function saveCategories(storage: Storage, config: CategoryConfig): void {
  storage.setItem(STORAGE_KEY, JSON.stringify(config));
}

export function resetCategories(storage: Storage): CategoryConfig {
  storage.removeItem(STORAGE_KEY);
  return DEFAULT_CATEGORIES;
}
