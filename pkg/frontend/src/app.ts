// Application wiring: quiver on the left, recorded word / coordinate /
// classification panels on the right.  The UI computes no mathematics —
// every displayed number is copied verbatim from a service response — and
// keeps at most one request in flight, disabling inputs while pending.

import { ApiClient, ApiError, Label, ReportDoc, SessionState } from "./api";
import { renderQuiver } from "./quiver";

function div(className: string, parent: HTMLElement): HTMLDivElement {
  const node = document.createElement("div");
  node.className = className;
  parent.appendChild(node);
  return node;
}

export class App {
  state: SessionState | null = null;
  report: ReportDoc | null = null;
  tropicalStart: string[] = [];
  private chain: Promise<void> = Promise.resolve();
  private busy = false;

  private svg!: SVGSVGElement;
  private wordDisplay!: HTMLElement;
  private aList!: HTMLUListElement;
  private xList!: HTMLUListElement;
  private tropList!: HTMLUListElement;
  private classifyPanel!: HTMLElement;
  private toastBox!: HTMLElement;
  private permInput!: HTMLInputElement;
  private buttons: HTMLButtonElement[] = [];

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {
    this.buildSkeleton();
  }

  private buildSkeleton(): void {
    this.root.replaceChildren();
    const main = div("app-main", this.root);

    const left = div("quiver-pane", main);
    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("width", "480");
    this.svg.setAttribute("height", "360");
    this.svg.id = "quiver";
    left.appendChild(this.svg);

    const side = div("side-pane", main);

    const wordSection = div("panel word-panel", side);
    wordSection.insertAdjacentHTML("beforeend", "<h3>recorded word</h3>");
    this.wordDisplay = document.createElement("code");
    this.wordDisplay.id = "word-display";
    wordSection.appendChild(this.wordDisplay);

    const coords = div("panel coords-panel", side);
    coords.insertAdjacentHTML("beforeend", "<h3>A values</h3>");
    this.aList = document.createElement("ul");
    this.aList.id = "a-values";
    coords.appendChild(this.aList);
    coords.insertAdjacentHTML("beforeend", "<h3>X values</h3>");
    this.xList = document.createElement("ul");
    this.xList.id = "x-values";
    coords.appendChild(this.xList);
    coords.insertAdjacentHTML("beforeend", "<h3>tropical point</h3>");
    this.tropList = document.createElement("ul");
    this.tropList.id = "trop-values";
    coords.appendChild(this.tropList);

    const controls = div("controls", side);
    this.permInput = document.createElement("input");
    this.permInput.id = "perm-input";
    this.permInput.placeholder = "(0 1)";
    controls.appendChild(this.permInput);
    const permButton = document.createElement("button");
    permButton.id = "perm-apply";
    permButton.textContent = "permute";
    permButton.addEventListener("click", () => this.applyPermutation(this.permInput.value));
    controls.appendChild(permButton);
    const undoButton = document.createElement("button");
    undoButton.id = "undo";
    undoButton.textContent = "undo";
    undoButton.addEventListener("click", () => this.undoNow());
    controls.appendChild(undoButton);
    const classifyButton = document.createElement("button");
    classifyButton.id = "classify";
    classifyButton.textContent = "classify";
    classifyButton.addEventListener("click", () => this.classifyNow());
    controls.appendChild(classifyButton);
    this.buttons = [permButton, undoButton, classifyButton];

    this.classifyPanel = div("panel classify-panel", side);
    this.classifyPanel.id = "classify-panel";
    this.toastBox = div("toast", side);
    this.toastBox.id = "toast";
  }

  /** serialize an action onto the single-request chain */
  private enqueue(action: () => Promise<void>): Promise<void> {
    this.chain = this.chain.then(async () => {
      this.setBusy(true);
      try {
        await action();
        this.toastBox.textContent = "";
      } catch (err) {
        if (err instanceof ApiError) {
          this.showToast(err, err.body);
        } else {
          this.toastBox.textContent = String(err);
        }
      } finally {
        this.setBusy(false);
        this.render();
      }
    });
    return this.chain;
  }

  whenIdle(): Promise<void> {
    return this.chain;
  }

  private setBusy(value: boolean): void {
    this.busy = value;
    for (const button of this.buttons) {
      button.disabled = value;
    }
  }

  private showToast(err: ApiError, body: Record<string, unknown>): void {
    if (body["error"] === "NotMappingClass") {
      const diff = (body["epsilon_diff"] as { i: Label; j: Label; expected: string; got: string }[]) ?? [];
      const lines = diff.map((d) => `eps(${d.i},${d.j}) expected ${d.expected} got ${d.got}`);
      this.classifyPanel.replaceChildren();
      const head = document.createElement("div");
      head.className = "verdict error";
      head.textContent = "Not a mapping class";
      this.classifyPanel.appendChild(head);
      const list = document.createElement("ul");
      list.className = "epsilon-diff";
      for (const line of lines) {
        const item = document.createElement("li");
        item.textContent = line;
        list.appendChild(item);
      }
      this.classifyPanel.appendChild(list);
    }
    this.toastBox.textContent = `error ${err.status}: ${err.message}`;
  }

  start(catalogName: string): Promise<void> {
    return this.enqueue(async () => {
      const created = await this.api.createSession({ catalog: catalogName });
      this.state = created.state;
      this.report = null;
      await this.refreshTropical();
    });
  }

  private async refreshTropical(): Promise<void> {
    if (!this.state || !this.state.is_mapping_class) {
      this.tropicalStart = [];
      return;
    }
    const orbit = await this.api.orbit(this.state.session, "trop", 0);
    this.tropicalStart = orbit.orbit[0].coords;
  }

  clickVertex(label: Label): Promise<void> {
    if (this.busy) {
      return this.chain;
    }
    return this.enqueue(async () => {
      if (!this.state) return;
      this.state = await this.api.mutate(this.state.session, label);
      this.report = null;
      await this.refreshTropical();
    });
  }

  applyPermutation(cycles: string): Promise<void> {
    return this.enqueue(async () => {
      if (!this.state || !cycles.trim()) return;
      this.state = await this.api.permute(this.state.session, cycles.trim());
      this.report = null;
      await this.refreshTropical();
    });
  }

  undoNow(): Promise<void> {
    return this.enqueue(async () => {
      if (!this.state) return;
      this.state = await this.api.undo(this.state.session);
      this.report = null;
      await this.refreshTropical();
    });
  }

  classifyNow(budgets?: Record<string, number>): Promise<void> {
    return this.enqueue(async () => {
      if (!this.state) return;
      this.report = await this.api.classify(this.state.session, budgets);
    });
  }

  highlightedVertices(): Set<string> {
    const sets = this.report?.invariant_sets ?? [];
    const out = new Set<string>();
    for (const entry of sets) {
      for (const v of entry.vertices) {
        out.add(String(v));
      }
    }
    return out;
  }

  render(): void {
    if (!this.state) return;
    renderQuiver(this.svg, this.state.quiver, {
      onVertexClick: (label) => void this.clickVertex(label),
      highlighted: this.highlightedVertices(),
    });
    this.wordDisplay.textContent = this.state.word;
    this.renderValues(this.aList, this.state.quiver.vertices, this.state.a_values);
    this.renderValues(
      this.xList,
      this.state.quiver.vertices.filter((v) => !this.state!.quiver.frozen.map(String).includes(String(v))),
      this.state.x_values,
    );
    this.renderValues(this.tropList, [], this.tropicalStart);
    this.renderReport();
  }

  private renderValues(list: HTMLUListElement, labels: Label[], values: string[]): void {
    list.replaceChildren();
    values.forEach((value, i) => {
      const item = document.createElement("li");
      const tag = document.createElement("span");
      tag.className = "label";
      tag.textContent = labels[i] !== undefined ? `${labels[i]}: ` : `${i}: `;
      const num = document.createElement("span");
      num.className = "value";
      num.textContent = value;
      item.append(tag, num);
      list.appendChild(item);
    });
  }

  private renderReport(): void {
    if (!this.report) {
      if (!this.classifyPanel.querySelector(".epsilon-diff")) {
        this.classifyPanel.replaceChildren();
      }
      return;
    }
    this.classifyPanel.replaceChildren();
    const report = this.report;
    const head = document.createElement("div");
    head.className = "verdict";
    if (report.verdict === "periodic") {
      head.textContent = `Periodic (order ${report.order})`;
    } else if (report.verdict === "cluster-reducible") {
      head.textContent = report.proper ? "Cluster-reducible (proper)" : "Cluster-reducible";
    } else if (report.verdict === "cluster-pa") {
      head.textContent = "cluster-pA (evidence)";
    } else {
      head.textContent = "Inconclusive at budgets";
    }
    this.classifyPanel.appendChild(head);

    for (const entry of report.invariant_sets) {
      const line = document.createElement("div");
      line.className = "evidence invariant-set";
      line.textContent = `${entry.pointwise ? "pointwise" : "setwise"} invariant {${entry.vertices.join(", ")}} at power ${entry.power}`;
      this.classifyPanel.appendChild(line);
    }
    for (const [direction, ray] of Object.entries(report.tropical_rays ?? {})) {
      if (!ray) continue;
      const line = document.createElement("div");
      line.className = "evidence tropical-ray";
      line.textContent = `${direction} ray (${ray.join(", ")})`;
      this.classifyPanel.appendChild(line);
    }
    if (report.divergence) {
      const line = document.createElement("div");
      line.className = "evidence divergence";
      line.textContent = `divergence certified at step ${report.divergence.step}`;
      this.classifyPanel.appendChild(line);
    }
  }
}
