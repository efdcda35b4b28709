// Single-page review UI. All state is server-authoritative: the view is
// re-rendered from API payloads, and every mutation is one API call.

import { ApiClient, ApiError } from './api.js';
import { densityColor, percentile95 } from './color.js';
import { segmentItemText } from './markers.js';
import { layoutTreemap } from './treemap.js';
import { ALL_SMELLS } from './types.js';
import type { ArtifactItems, Finding, SmellKind, TreemapNode } from './types.js';

export interface ViewState {
  run: string | null;
  artifact: string | null;
  enabledSmells: Set<SmellKind>;
  showRejected: boolean;
  showSuppressed: boolean;
  selectedFinding: string | null;
  treemapSmell: SmellKind | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  state: ViewState = {
    run: null,
    artifact: null,
    enabledSmells: new Set(ALL_SMELLS),
    showRejected: false,
    showSuppressed: false,
    selectedFinding: null,
    treemapSmell: null,
  };

  constructor(
    private root: HTMLElement,
    private api: ApiClient = new ApiClient(),
  ) {}

  async start(): Promise<void> {
    window.addEventListener('hashchange', () => void this.route());
    await this.route();
  }

  /** Routes: #/run/<id> (hotspots) and #/run/<id>/artifact/<artifactId>. */
  async route(): Promise<void> {
    const hash = window.location.hash.replace(/^#\/?/, '');
    const parts = hash.split('/').filter((p) => p.length > 0);
    try {
      if (parts[0] === 'run' && parts[1]) {
        this.state.run = decodeURIComponent(parts[1]);
        if (parts[2] === 'artifact' && parts[3]) {
          this.state.artifact = decodeURIComponent(parts.slice(3).join('/'));
          await this.renderArtifact();
        } else {
          this.state.artifact = null;
          await this.renderTreemap();
        }
        return;
      }
      const runs = await this.api.listRuns();
      if (runs.length === 0) {
        this.renderShell(el('p', 'empty', 'No runs yet. Analyze a corpus first.'));
        return;
      }
      window.location.hash = `#/run/${encodeURIComponent(runs[runs.length - 1].run_id)}`;
    } catch (error) {
      this.renderError(error, () => void this.route());
    }
  }

  // -- chrome ---------------------------------------------------------------

  private renderShell(...content: HTMLElement[]): void {
    this.root.textContent = '';
    const header = el('header');
    header.append(el('h1', 'brand', 'reqsmell review'));
    if (this.state.run) {
      const nav = el('nav');
      const hotspots = el('a', 'nav-link', 'Hotspots');
      hotspots.setAttribute('href', `#/run/${encodeURIComponent(this.state.run)}`);
      nav.append(hotspots);
      if (this.state.artifact) {
        nav.append(el('span', 'nav-current', this.state.artifact));
      }
      header.append(nav);
    }
    const main = el('main');
    main.append(...content);
    this.root.append(header, main, el('div', 'toast-area'));
  }

  private renderError(error: unknown, retry: () => void): void {
    const banner = el('div', 'error-banner');
    const message = error instanceof Error ? error.message : String(error);
    banner.append(el('span', undefined, `Request failed: ${message}`));
    const button = el('button', 'retry', 'Retry');
    button.addEventListener('click', retry);
    banner.append(button);
    this.renderShell(banner);
  }

  private toast(message: string): void {
    const area = this.root.querySelector('.toast-area');
    if (!area) return;
    const note = el('div', 'toast', message);
    area.append(note);
    setTimeout(() => note.remove(), 4000);
  }

  // -- hotspot treemap --------------------------------------------------------

  async renderTreemap(): Promise<void> {
    if (!this.state.run) return;
    try {
      const tree = await this.api.treemap(this.state.run, this.state.treemapSmell ?? undefined);
      const controls = el('div', 'controls');
      controls.append(this.smellDropdown());
      const board = this.treemapBoard(tree);
      this.renderShell(controls, board);
    } catch (error) {
      this.renderError(error, () => void this.renderTreemap());
    }
  }

  private smellDropdown(): HTMLElement {
    const label = el('label', 'treemap-smell', 'Color by: ');
    const select = el('select');
    const overall = el('option', undefined, 'All smells');
    overall.setAttribute('value', '');
    select.append(overall);
    for (const kind of ALL_SMELLS) {
      const option = el('option', undefined, kind);
      option.setAttribute('value', kind);
      if (this.state.treemapSmell === kind) option.setAttribute('selected', 'selected');
      select.append(option);
    }
    select.addEventListener('change', () => {
      this.state.treemapSmell = (select.value || null) as SmellKind | null;
      void this.renderTreemap();
    });
    label.append(select);
    return label;
  }

  private treemapBoard(tree: TreemapNode): HTMLElement {
    const board = el('div', 'treemap');
    const width = 960;
    const height = 540;
    board.style.width = `${width}px`;
    board.style.height = `${height}px`;
    if (tree.children.length === 0) {
      board.append(el('p', 'empty', 'This run has no artifacts.'));
      return board;
    }
    const leaves = layoutTreemap(tree, { x: 0, y: 0, w: width, h: height }, this.state.treemapSmell ?? undefined);
    const scaleMax = percentile95(leaves.map((leaf) => leaf.density));
    for (const leaf of leaves) {
      const cell = el('div', 'treemap-leaf');
      cell.style.left = `${leaf.x}px`;
      cell.style.top = `${leaf.y}px`;
      cell.style.width = `${leaf.w}px`;
      cell.style.height = `${leaf.h}px`;
      cell.style.backgroundColor = densityColor(leaf.density, scaleMax);
      cell.title = `${leaf.node.artifact_id ?? leaf.node.name}: ${leaf.node.findings_total} findings, ${leaf.density.toFixed(1)}/1000 words`;
      cell.dataset.artifactId = leaf.node.artifact_id ?? '';
      cell.append(el('span', 'leaf-label', leaf.node.name));
      cell.addEventListener('click', () => {
        if (!leaf.node.artifact_id || !this.state.run) return;
        window.location.hash = `#/run/${encodeURIComponent(this.state.run)}/artifact/${encodeURIComponent(leaf.node.artifact_id)}`;
      });
      board.append(cell);
    }
    return board;
  }

  // -- artifact view -------------------------------------------------------------

  async renderArtifact(): Promise<void> {
    if (!this.state.run || !this.state.artifact) return;
    try {
      const payload = await this.api.items(this.state.run, this.state.artifact, {
        includeRejected: this.state.showRejected,
        includeSuppressed: this.state.showSuppressed,
        smells:
          this.state.enabledSmells.size === ALL_SMELLS.length
            ? undefined
            : [...this.state.enabledSmells],
      });
      this.renderShell(this.artifactControls(), this.artifactBody(payload));
    } catch (error) {
      this.renderError(error, () => void this.renderArtifact());
    }
  }

  private artifactControls(): HTMLElement {
    const controls = el('div', 'controls');
    for (const kind of ALL_SMELLS) {
      const label = el('label', 'smell-toggle');
      const box = el('input');
      box.setAttribute('type', 'checkbox');
      box.dataset.smell = kind;
      if (this.state.enabledSmells.has(kind)) box.setAttribute('checked', 'checked');
      box.addEventListener('change', () => {
        if (this.state.enabledSmells.has(kind)) {
          if (this.state.enabledSmells.size > 1) this.state.enabledSmells.delete(kind);
        } else {
          this.state.enabledSmells.add(kind);
        }
        void this.renderArtifact();
      });
      label.append(box, el('span', `swatch smell-${kind}`), el('span', undefined, kind));
      controls.append(label);
    }
    const rejected = el('label', 'show-toggle');
    const rejectedBox = el('input');
    rejectedBox.setAttribute('type', 'checkbox');
    rejectedBox.dataset.toggle = 'rejected';
    if (this.state.showRejected) rejectedBox.setAttribute('checked', 'checked');
    rejectedBox.addEventListener('change', () => {
      this.state.showRejected = !this.state.showRejected;
      void this.renderArtifact();
    });
    rejected.append(rejectedBox, el('span', undefined, 'show rejected'));
    const suppressed = el('label', 'show-toggle');
    const suppressedBox = el('input');
    suppressedBox.setAttribute('type', 'checkbox');
    suppressedBox.dataset.toggle = 'suppressed';
    if (this.state.showSuppressed) suppressedBox.setAttribute('checked', 'checked');
    suppressedBox.addEventListener('change', () => {
      this.state.showSuppressed = !this.state.showSuppressed;
      void this.renderArtifact();
    });
    suppressed.append(suppressedBox, el('span', undefined, 'show suppressed'));
    controls.append(rejected, suppressed);
    return controls;
  }

  private artifactBody(payload: ArtifactItems): HTMLElement {
    const body = el('div', 'artifact');
    for (const item of payload.items) {
      const section = el('section', 'item');
      section.dataset.itemId = item.item_id;
      section.append(el('h3', 'item-id', item.item_id));
      const text = el('p', 'item-text');
      for (const segment of segmentItemText(item.text, item.findings)) {
        if (segment.findings.length === 0) {
          text.append(document.createTextNode(segment.text));
          continue;
        }
        const primary = segment.findings[0];
        const marker = el('mark', `marker smell-${primary.smell}`, segment.text);
        marker.dataset.findingId = primary.finding_id;
        marker.dataset.smell = primary.smell;
        if (primary.review && !primary.review.custom && primary.review.status === 'accepted') {
          marker.classList.add('status-accepted');
        }
        if (primary.review?.custom) marker.dataset.statusLabel = primary.review.status;
        marker.addEventListener('click', () => void this.openDetail(segment.findings, marker));
        text.append(marker);
      }
      section.append(text);
      body.append(section);
    }
    return body;
  }

  // -- finding detail + review actions ----------------------------------------------

  private async openDetail(findings: Finding[], anchor: HTMLElement): Promise<void> {
    this.root.querySelector('.detail')?.remove();
    const finding = findings[0];
    this.state.selectedFinding = finding.finding_id;
    if (this.state.run) {
      try {
        await this.api.findingDetail(this.state.run, finding.finding_id);
      } catch (error) {
        if (error instanceof ApiError && error.status === 404) {
          // Stale finding (re-analysis happened): refresh the whole view.
          void this.renderArtifact();
          return;
        }
      }
    }
    const panel = el('div', 'detail');
    panel.append(el('h4', undefined, finding.smell));
    for (const entry of findings) {
      panel.append(el('p', 'message', entry.message));
      panel.append(el('p', 'hint', entry.improvement_hint));
      if (entry.review) {
        panel.append(el('p', 'review-state', `status: ${entry.review.status}`));
      }
    }
    const actions = el('div', 'actions');
    const accept = el('button', 'accept', 'Accept');
    accept.addEventListener('click', () => void this.review(finding, 'accepted', anchor, panel));
    const reject = el('button', 'reject', 'Reject');
    reject.addEventListener('click', () => void this.review(finding, 'rejected', anchor, panel));
    const custom = el('input', 'custom-status');
    custom.setAttribute('placeholder', 'custom status, e.g. under review');
    const comment = el('input', 'comment');
    comment.setAttribute('placeholder', 'comment');
    const save = el('button', 'save-custom', 'Set status');
    save.addEventListener('click', () =>
      void this.review(finding, custom.value, anchor, panel, comment.value || null),
    );
    actions.append(accept, reject, custom, comment, save);
    panel.append(actions);
    anchor.insertAdjacentElement('afterend', panel);
  }

  private async review(
    finding: Finding,
    status: string,
    marker: HTMLElement,
    panel: HTMLElement,
    comment: string | null = null,
  ): Promise<void> {
    if (!this.state.run) return;
    // Optimistic update: apply the visual effect, roll back on error.
    const undo = this.applyVerdictLocally(finding, status, marker, panel);
    try {
      const record = await this.api.putReview(this.state.run, finding.finding_id, {
        status,
        comment,
      });
      finding.review = record;
    } catch (error) {
      undo();
      if (error instanceof ApiError && error.status === 422) {
        const note = el('p', 'validation-error', error.message);
        panel.append(note);
      } else {
        this.toast(`Review failed: ${error instanceof Error ? error.message : error}`);
      }
    }
  }

  private applyVerdictLocally(
    finding: Finding,
    status: string,
    marker: HTMLElement,
    panel: HTMLElement,
  ): () => void {
    if (status.toLowerCase() === 'rejected' && !this.state.showRejected) {
      const parent = marker.parentNode;
      const placeholder = document.createTextNode(marker.textContent ?? '');
      parent?.replaceChild(placeholder, marker);
      panel.remove();
      return () => {
        parent?.replaceChild(marker, placeholder);
      };
    }
    if (status.toLowerCase() === 'accepted') {
      marker.classList.add('status-accepted');
      return () => marker.classList.remove('status-accepted');
    }
    const previous = marker.dataset.statusLabel;
    marker.dataset.statusLabel = status;
    return () => {
      if (previous === undefined) delete marker.dataset.statusLabel;
      else marker.dataset.statusLabel = previous;
    };
  }
}

export function boot(): void {
  const root = document.getElementById('app');
  if (root) void new App(root).start();
}

declare global {
  interface Window {
    __REQSMELL_NO_AUTOBOOT__?: boolean;
  }
}

if (typeof window !== 'undefined' && !window.__REQSMELL_NO_AUTOBOOT__) {
  if (document.readyState === 'loading') {
    document.addEventListener('DOMContentLoaded', boot);
  } else {
    boot();
  }
}
