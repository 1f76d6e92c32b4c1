/** Wire formats of the busfactor service API. */

export interface AuthorShare {
  id: string;
  knowledge: number;
  share: number;
  major: boolean;
}

export interface TreeNode {
  name: string;
  path: string;
  kind: "FILE" | "FOLDER";
  bytes: number;
  status: "ACTIVE" | "INACTIVE";
  busFactor: number | null;
  authors: AuthorShare[];
  children?: TreeNode[];
}

export interface RepoSummary {
  owner: string;
  name: string;
  rootBusFactor: number | null;
  analyzedAt?: string;
}

export interface JobSummary {
  jobId: string;
  owner: string;
  name: string;
  state: "QUEUED" | "RUNNING" | "DONE" | "FAILED";
  error: string | null;
}

export interface JobLogPage {
  lines: string[];
  nextIndex: number;
}

export interface SimulationDelta {
  path: string;
  originalBf: number | null;
  simulatedBf: number | null;
  delta: number;
}

export interface SearchResult {
  owner: string;
  name: string;
  cloneUrl: string;
  defaultBranch: string | null;
}

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}
