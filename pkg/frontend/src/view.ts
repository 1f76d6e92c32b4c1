/** DOM rendering. Every function clears its container and rebuilds it from
 * its inputs, so the visible UI is a pure function of (tree artifact, view
 * state, last simulation response). No bus factor math happens here; every
 * number shown comes from the API.
 */

import { categoryFor, type CategoryConfig, type CategoryRange } from "./categories.js";
import { formatBytes, formatDelta, formatShare, tooltipText } from "./format.js";
import { byteWeight, layoutTreemap } from "./treemap.js";
import type { JobSummary, RepoSummary, SearchResult, SimulationDelta, TreeNode } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  container: Element,
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = container.ownerDocument.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  container.appendChild(node);
  return node;
}

export interface SimulatedView {
  byPath: Map<string, SimulationDelta>;
}

export interface TreemapHandlers {
  onTileClick?: (node: TreeNode) => void;
  onTileHover?: (text: string) => void;
}

/** Tiles for the children of `node` (files show as a single full tile). */
export function renderTreemap(
  container: HTMLElement,
  node: TreeNode,
  categories: CategoryConfig,
  handlers: TreemapHandlers = {},
  simulated: SimulatedView | null = null,
): void {
  container.replaceChildren();
  container.classList.add("treemap");
  const width = container.clientWidth || 960;
  const height = container.clientHeight || 560;
  const children = node.kind === "FOLDER" ? (node.children ?? []) : [node];
  if (children.length === 0) {
    el(container, "div", "treemap-empty", "empty folder");
    return;
  }
  const weights = children.map((c) => byteWeight(c.bytes));
  const rects = layoutTreemap(weights, { x: 0, y: 0, w: width, h: height });
  children.forEach((child, index) => {
    const rect = rects[index];
    const tile = el(container, "div", "tile");
    const sim = simulated?.byPath.get(child.path) ?? null;
    const busFactor = sim !== null ? sim.simulatedBf : child.busFactor;
    const category = categoryFor(busFactor, categories);
    tile.style.left = `${rect.x}px`;
    tile.style.top = `${rect.y}px`;
    tile.style.width = `${rect.w}px`;
    tile.style.height = `${rect.h}px`;
    tile.style.background = category.color;
    tile.dataset.path = child.path;
    tile.dataset.category = category.label;
    const hover = tooltipText(child.path, busFactor);
    tile.title = hover;
    const label = el(tile, "span", "tile-label", child.name);
    label.title = hover;
    if (sim !== null && sim.delta !== 0) {
      el(tile, "span", "delta-badge", formatDelta(sim.delta));
    }
    if (child.kind === "FOLDER") tile.classList.add("tile-folder");
    tile.addEventListener("click", () => handlers.onTileClick?.(child));
    tile.addEventListener("mouseenter", () =>
      handlers.onTileHover?.(`${hover} · ${formatBytes(child.bytes)}`),
    );
  });
}

export function renderBreadcrumbs(
  container: HTMLElement,
  crumbs: { label: string; path: string }[],
  onNavigate: (path: string) => void,
): void {
  container.replaceChildren();
  crumbs.forEach((crumb, index) => {
    if (index > 0) el(container, "span", "crumb-sep", "›");
    const link = el(container, "a", "crumb", crumb.label);
    link.href = "#";
    link.addEventListener("click", (event) => {
      event.preventDefault();
      onNavigate(crumb.path);
    });
  });
}

/** Contributor list for the focused node: top N names, N = its bus factor. */
export function renderContributors(container: HTMLElement, node: TreeNode): void {
  container.replaceChildren();
  el(container, "h3", "", "Contributors");
  if (node.busFactor === null || node.authors.length === 0) {
    el(container, "p", "muted", "No active contributors in this scope.");
    return;
  }
  const top = node.authors.slice(0, node.busFactor);
  const list = el(container, "ul", "contributors");
  for (const author of top) {
    const item = el(list, "li");
    el(item, "span", "author-id", author.id);
    el(item, "span", "author-share", formatShare(author.share));
  }
  el(container, "p", "muted", `showing top ${top.length} of ${node.authors.length}`);
}

export interface CategoryEditorHandlers {
  onApply: (config: CategoryConfig) => void;
  onReset: () => void;
}

export function renderCategoryEditor(
  container: HTMLElement,
  config: CategoryConfig,
  handlers: CategoryEditorHandlers,
): void {
  container.replaceChildren();
  el(container, "h3", "", "Categories");
  const rows: { range: CategoryRange; color: HTMLInputElement; min: HTMLInputElement; max: HTMLInputElement }[] = [];
  for (const range of config.ranges) {
    const row = el(container, "div", "category-row");
    const swatch = el(row, "span", "swatch");
    swatch.style.background = range.color;
    el(row, "span", "category-label", range.label);
    const color = el(row, "input", "color-input") as HTMLInputElement;
    color.value = range.color;
    const min = el(row, "input", "range-input") as HTMLInputElement;
    min.value = String(range.minBf);
    const max = el(row, "input", "range-input") as HTMLInputElement;
    max.value = range.maxBf === null ? "" : String(range.maxBf);
    max.placeholder = "∞";
    rows.push({ range, color, min, max });
  }
  const actions = el(container, "div", "category-actions");
  const apply = el(actions, "button", "", "Apply");
  apply.addEventListener("click", () => {
    const ranges = rows.map(({ range, color, min, max }) => ({
      label: range.label,
      color: color.value.trim(),
      minBf: Number(min.value),
      maxBf: max.value.trim() === "" ? null : Number(max.value),
    }));
    handlers.onApply({ ranges, notApplicableColor: config.notApplicableColor });
  });
  const reset = el(actions, "button", "", "Reset");
  reset.addEventListener("click", () => handlers.onReset());
}

export interface SimulationPanelHandlers {
  onToggle: (authorId: string, excluded: boolean) => void;
}

/** Checkbox per contributor of the focused scope; unchecked = departed. */
export function renderSimulationPanel(
  container: HTMLElement,
  node: TreeNode,
  excluded: ReadonlySet<string>,
  handlers: SimulationPanelHandlers,
): void {
  container.replaceChildren();
  el(container, "h3", "", "Simulation Mode");
  if (node.authors.length === 0) {
    el(container, "p", "muted", "No contributors to exclude.");
    return;
  }
  const list = el(container, "ul", "sim-authors");
  for (const author of node.authors) {
    const item = el(list, "li");
    const label = el(item, "label");
    const checkbox = el(label, "input") as HTMLInputElement;
    checkbox.type = "checkbox";
    checkbox.checked = !excluded.has(author.id);
    checkbox.dataset.author = author.id;
    checkbox.addEventListener("change", () => {
      handlers.onToggle(author.id, !checkbox.checked);
    });
    el(label, "span", "author-id", author.id);
    el(label, "span", "author-share", formatShare(author.share));
  }
}

export function renderRepoList(
  container: HTMLElement,
  repos: RepoSummary[],
  onOpen: (repo: RepoSummary) => void,
): void {
  container.replaceChildren();
  el(container, "h3", "", "Analyzed repositories");
  if (repos.length === 0) {
    el(container, "p", "muted", "Nothing analyzed yet; search and submit a repository.");
    return;
  }
  const list = el(container, "ul", "repo-list");
  for (const repo of repos) {
    const item = el(list, "li");
    const link = el(item, "a", "repo-link", `${repo.owner}/${repo.name}`);
    link.href = "#";
    link.addEventListener("click", (event) => {
      event.preventDefault();
      onOpen(repo);
    });
    const bf = repo.rootBusFactor === null ? "n/a" : String(repo.rootBusFactor);
    el(item, "span", "repo-bf", `BF ${bf}`);
  }
}

export function renderSearchResults(
  container: HTMLElement,
  results: SearchResult[],
  onSubmit: (result: SearchResult) => void,
): void {
  container.replaceChildren();
  if (results.length === 0) return;
  const list = el(container, "ul", "search-results");
  for (const result of results) {
    const item = el(list, "li");
    el(item, "span", "", `${result.owner}/${result.name}`);
    const button = el(item, "button", "", "Analyze");
    button.addEventListener("click", () => onSubmit(result));
  }
}

export function renderJobs(container: HTMLElement, jobs: JobSummary[], onSelect: (job: JobSummary) => void): void {
  container.replaceChildren();
  el(container, "h3", "", "Jobs");
  if (jobs.length === 0) {
    el(container, "p", "muted", "No jobs yet.");
    return;
  }
  const list = el(container, "ul", "job-list");
  for (const job of jobs) {
    const item = el(list, "li", `job-state-${job.state.toLowerCase()}`);
    const link = el(item, "a", "", `${job.owner}/${job.name}`);
    link.href = "#";
    link.addEventListener("click", (event) => {
      event.preventDefault();
      onSelect(job);
    });
    el(item, "span", "job-state", job.state);
  }
}

export function appendJobLogLines(container: HTMLElement, lines: string[]): void {
  for (const line of lines) {
    el(container, "div", "log-line", line);
  }
  container.scrollTop = container.scrollHeight;
}

export function toast(root: HTMLElement, message: string): void {
  const note = el(root, "div", "toast", message);
  setTimeout(() => note.remove(), 4000);
}
