/** Thin client over the service HTTP API; the only network code in the app. */

import type {
  JobLogPage,
  JobSummary,
  RepoSummary,
  SearchResult,
  SimulationDelta,
  TreeNode,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly body: unknown = null,
  ) {
    super(message);
  }
}

async function request<T>(input: string, init?: RequestInit): Promise<T> {
  const response = await fetch(input, init);
  const isJson = (response.headers.get("content-type") ?? "").includes("json");
  const body = isJson ? await response.json() : await response.text();
  if (!response.ok) {
    const detail =
      typeof body === "object" && body !== null && "detail" in body
        ? String((body as { detail: unknown }).detail)
        : response.statusText;
    throw new ApiError(detail, response.status, body);
  }
  return body as T;
}

export class ApiClient {
  constructor(private readonly base = "") {}

  searchRepos(query: string, limit = 10): Promise<SearchResult[]> {
    const params = new URLSearchParams({ q: query, limit: String(limit) });
    return request(`${this.base}/api/search?${params}`);
  }

  submitJob(owner: string, name: string): Promise<{ jobId: string }> {
    return request(`${this.base}/api/jobs`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ owner, name }),
    });
  }

  listJobs(): Promise<JobSummary[]> {
    return request(`${this.base}/api/jobs`);
  }

  jobLog(jobId: string, from: number): Promise<JobLogPage> {
    return request(`${this.base}/api/jobs/${jobId}/log?from=${from}`);
  }

  listRepos(): Promise<RepoSummary[]> {
    return request(`${this.base}/api/repos`);
  }

  fetchTree(owner: string, name: string): Promise<TreeNode> {
    return request(`${this.base}/api/repos/${owner}/${name}/tree`);
  }

  simulate(owner: string, name: string, excluded: string[]): Promise<SimulationDelta[]> {
    return request(`${this.base}/api/repos/${owner}/${name}/simulate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ excluded }),
    });
  }

  exportCsvUrl(owner: string, name: string): string {
    return `${this.base}/api/repos/${owner}/${name}/export.csv`;
  }
}
