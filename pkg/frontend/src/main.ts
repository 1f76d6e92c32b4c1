/** Application wiring: state transitions, API calls, polling, rendering. */

import { ApiClient, ApiError } from "./api.js";
import {
  loadCategories,
  resetCategories,
  saveCategories,
  validateCategories,
  type CategoryConfig,
} from "./categories.js";
import { SimulationLoop } from "./simulation.js";
import { breadcrumbsFor, focusedNode, type ViewState } from "./state.js";
import type { JobSummary, SimulationDelta, TreeNode } from "./types.js";
import {
  appendJobLogLines,
  renderBreadcrumbs,
  renderCategoryEditor,
  renderContributors,
  renderJobs,
  renderRepoList,
  renderSearchResults,
  renderSimulationPanel,
  renderTreemap,
  toast,
  type SimulatedView,
} from "./view.js";

interface Elements {
  root: HTMLElement;
  repoList: HTMLElement;
  searchBox: HTMLInputElement;
  searchButton: HTMLButtonElement;
  searchResults: HTMLElement;
  jobs: HTMLElement;
  jobLog: HTMLElement;
  breadcrumbs: HTMLElement;
  treemap: HTMLElement;
  simTreemap: HTMLElement;
  hoverStatus: HTMLElement;
  contributors: HTMLElement;
  categoryEditor: HTMLElement;
  simulationPanel: HTMLElement;
  simulationToggle: HTMLInputElement;
  exportJson: HTMLAnchorElement;
  exportCsv: HTMLAnchorElement;
}

export class App {
  private tree: TreeNode | null = null;
  private readonly state: ViewState;
  private readonly simulation: SimulationLoop;
  private readonly storage: Storage;
  private logJobId: string | null = null;
  private logIndex = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly ui: Elements,
    storage: Storage,
  ) {
    this.state = {
      repo: null,
      focusedPath: "",
      excluded: new Set(),
      simulationOn: false,
      categories: loadCategories(storage),
      lastSimulation: null,
    };
    this.storage = storage;
    this.simulation = new SimulationLoop(
      (excluded) => {
        const repo = this.state.repo;
        if (!repo) return Promise.resolve([]);
        return this.api.simulate(repo.owner, repo.name, excluded);
      },
      (deltas) => {
        this.state.lastSimulation = deltas;
        this.render();
      },
      (error, excluded) => this.onSimulationError(error, excluded),
    );
  }

  async start(): Promise<void> {
    this.ui.searchButton.addEventListener("click", () => void this.search());
    this.ui.searchBox.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.search();
    });
    this.ui.simulationToggle.addEventListener("change", () => {
      this.state.simulationOn = this.ui.simulationToggle.checked;
      if (!this.state.simulationOn) {
        this.state.excluded.clear();
        this.state.lastSimulation = null;
      }
      this.render();
    });
    await this.refreshRepos();
    setInterval(() => void this.pollJobs(), 1000);
  }

  private async search(): Promise<void> {
    const query = this.ui.searchBox.value.trim();
    if (!query) return;
    try {
      const results = await this.api.searchRepos(query);
      renderSearchResults(this.ui.searchResults, results, (result) => {
        void this.submitJob(result.owner, result.name);
      });
    } catch (error) {
      toast(this.ui.root, `search failed: ${message(error)}`);
    }
  }

  private async submitJob(owner: string, name: string): Promise<void> {
    try {
      const { jobId } = await this.api.submitJob(owner, name);
      toast(this.ui.root, `analysis queued for ${owner}/${name}`);
      this.watchLog(jobId);
    } catch (error) {
      toast(this.ui.root, `submit failed: ${message(error)}`);
    }
  }

  private watchLog(jobId: string): void {
    this.logJobId = jobId;
    this.logIndex = 0;
    this.ui.jobLog.replaceChildren();
  }

  private async pollJobs(): Promise<void> {
    try {
      const jobs = await this.api.listJobs();
      renderJobs(this.ui.jobs, jobs, (job) => this.watchLog(job.jobId));
      if (this.logJobId !== null) {
        const page = await this.api.jobLog(this.logJobId, this.logIndex);
        if (page.lines.length > 0) {
          appendJobLogLines(this.ui.jobLog, page.lines);
          this.logIndex = page.nextIndex;
        }
      }
      if (jobs.some((job: JobSummary) => job.state === "DONE")) {
        await this.refreshRepos();
      }
    } catch {
      // polling errors are transient; the next tick retries
    }
  }

  private async refreshRepos(): Promise<void> {
    const repos = await this.api.listRepos();
    renderRepoList(this.ui.repoList, repos, (repo) => void this.openRepo(repo.owner, repo.name));
  }

  private async openRepo(owner: string, name: string): Promise<void> {
    try {
      this.tree = await this.api.fetchTree(owner, name);
      this.state.repo = { owner, name };
      this.state.focusedPath = "";
      this.state.excluded.clear();
      this.state.lastSimulation = null;
      this.ui.exportJson.href = `/api/repos/${owner}/${name}/tree`;
      this.ui.exportCsv.href = this.api.exportCsvUrl(owner, name);
      this.render();
    } catch (error) {
      toast(this.ui.root, `could not load tree: ${message(error)}`);
    }
  }

  private onToggleAuthor(authorId: string, excluded: boolean): void {
    if (excluded) this.state.excluded.add(authorId);
    else this.state.excluded.delete(authorId);
    this.simulation.setExcluded(this.state.excluded);
  }

  private onSimulationError(error: unknown, excluded: string[]): void {
    if (error instanceof ApiError && error.status === 422) {
      toast(this.ui.root, `unknown contributors: ${message(error)}`);
      // revert the failed exclusion set so checkboxes match reality again
      for (const id of excluded) this.state.excluded.delete(id);
      this.render();
      return;
    }
    toast(this.ui.root, `simulation failed: ${message(error)}`);
  }

  private applyCategories(config: CategoryConfig): void {
    const problem = validateCategories(config);
    if (problem !== null) {
      toast(this.ui.root, `invalid categories: ${problem}`);
      return;
    }
    this.state.categories = config;
    saveCategories(this.storage, config);
    this.render(); // recolor only; no network traffic
  }

  render(): void {
    if (this.tree === null) return;
    const focus = focusedNode(this.tree, this.state);
    renderBreadcrumbs(this.ui.breadcrumbs, breadcrumbsFor(focus.path), (path) => {
      this.state.focusedPath = path;
      this.render();
    });
    const handlers = {
      onTileClick: (node: TreeNode) => {
        if (node.kind === "FOLDER") {
          this.state.focusedPath = node.path;
          this.render();
        } else {
          this.ui.hoverStatus.textContent = `${node.path} (${node.kind.toLowerCase()})`;
        }
      },
      onTileHover: (text: string) => {
        this.ui.hoverStatus.textContent = text;
      },
    };
    renderTreemap(this.ui.treemap, focus, this.state.categories, handlers);
    renderContributors(this.ui.contributors, focus);
    renderCategoryEditor(this.ui.categoryEditor, this.state.categories, {
      onApply: (config) => this.applyCategories(config),
      onReset: () => {
        this.state.categories = resetCategories(this.storage);
        this.render();
      },
    });
    this.ui.simulationPanel.hidden = !this.state.simulationOn;
    this.ui.simTreemap.hidden = !this.state.simulationOn;
    if (this.state.simulationOn) {
      renderSimulationPanel(this.ui.simulationPanel, focus, this.state.excluded, {
        onToggle: (id, excluded) => this.onToggleAuthor(id, excluded),
      });
      const simulated: SimulatedView | null = this.state.lastSimulation
        ? { byPath: new Map(this.state.lastSimulation.map((d: SimulationDelta) => [d.path, d])) }
        : null;
      renderTreemap(this.ui.simTreemap, focus, this.state.categories, handlers, simulated);
    }
  }
}

function message(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}

function grab(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

export function bootstrap(): void {
  const ui: Elements = {
    root: document.body,
    repoList: grab("repo-list"),
    searchBox: grab("search-box") as HTMLInputElement,
    searchButton: grab("search-button") as HTMLButtonElement,
    searchResults: grab("search-results"),
    jobs: grab("jobs"),
    jobLog: grab("job-log"),
    breadcrumbs: grab("breadcrumbs"),
    treemap: grab("treemap"),
    simTreemap: grab("sim-treemap"),
    hoverStatus: grab("hover-status"),
    contributors: grab("contributors"),
    categoryEditor: grab("category-editor"),
    simulationPanel: grab("simulation-panel"),
    simulationToggle: grab("simulation-toggle") as HTMLInputElement,
    exportJson: grab("export-json") as HTMLAnchorElement,
    exportCsv: grab("export-csv") as HTMLAnchorElement,
  };
  const app = new App(new ApiClient(), ui, window.localStorage);
  void app.start();
}

if (typeof document !== "undefined" && document.getElementById("treemap")) {
  bootstrap();
}
