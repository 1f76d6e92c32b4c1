/** View state and tree navigation helpers. */

import type { CategoryConfig } from "./categories.js";
import type { SimulationDelta, TreeNode } from "./types.js";

export interface ViewState {
  repo: { owner: string; name: string } | null;
  focusedPath: string;
  excluded: Set<string>;
  simulationOn: boolean;
  categories: CategoryConfig;
  lastSimulation: SimulationDelta[] | null;
}

export function findNode(root: TreeNode, path: string): TreeNode | null {
  if (root.path === path) return root;
  for (const child of root.children ?? []) {
    const found = findNode(child, path);
    if (found !== null) return found;
  }
  return null;
}

/** Focused node, falling back to the root when the path vanished. */
export function focusedNode(root: TreeNode, state: ViewState): TreeNode {
  const node = findNode(root, state.focusedPath);
  if (node === null) {
    state.focusedPath = "";
    return root;
  }
  return node;
}

export interface Crumb {
  label: string;
  path: string;
}

export function breadcrumbsFor(path: string): Crumb[] {
  const crumbs: Crumb[] = [{ label: "/", path: "" }];
  if (!path) return crumbs;
  const segments = path.split("/");
  for (let i = 0; i < segments.length; i++) {
    crumbs.push({ label: segments[i], path: segments.slice(0, i + 1).join("/") });
  }
  return crumbs;
}

/** All contributor ids known to a subtree, by descending knowledge. */
export function subtreeAuthors(node: TreeNode): { id: string; share: number }[] {
  return node.authors.map((a) => ({ id: a.id, share: a.share }));
}
