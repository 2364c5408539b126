/** Browser wiring: canvas painting, drag-rectangle zoom, inspection. */

import { BundleError, parseBundleText } from "./bundle.js";
import { DEFAULT_RAMP, rampColor } from "./ramp.js";
import { createState, resetZoom, setScale, zoomOut, zoomTo, ViewState } from "./state.js";
import type { Cell, Model, ScaleMode } from "./types.js";
import { cellBlocks, inspectPixel, pixelRectToWindow, planView, ViewLayout } from "./view.js";

const MIN_SEGMENT_PX = 4;

interface App {
  model: Model;
  state: ViewState;
  layout: ViewLayout | null;
}

const app: App = { model: null as unknown as Model, state: null as unknown as ViewState, layout: null };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showError(message: string): void {
  const banner = el<HTMLDivElement>("error-banner");
  banner.textContent = message;
  banner.hidden = false;
}

function clearError(): void {
  el<HTMLDivElement>("error-banner").hidden = true;
}

function cssColor(color: [number, number, number]): string {
  return `rgb(${color[0]}, ${color[1]}, ${color[2]})`;
}

let drawToken = 0;

function draw(): void {
  const canvas = el<HTMLCanvasElement>("matrix");
  const ctx = canvas.getContext("2d");
  if (!ctx || !app.model) return;
  const layout = planView(app.model, app.state.window, canvas.width, canvas.height,
                          MIN_SEGMENT_PX);
  app.layout = layout;
  ctx.fillStyle = cssColor(DEFAULT_RAMP.background);
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  // separator guides between visible segments
  ctx.fillStyle = "rgb(225, 225, 225)";
  for (const seg of layout.cols.slice(1)) ctx.fillRect(seg.pxBase, 0, 1, canvas.height);
  for (const seg of layout.rows.slice(1)) ctx.fillRect(0, seg.pxBase, canvas.width, 1);
  // paint in chunks so huge windows never freeze the event loop; a newer
  // draw() call supersedes the remaining chunks
  const blocks = cellBlocks(app.model, layout, app.state.scale);
  const token = ++drawToken;
  let i = 0;
  const step = () => {
    if (token !== drawToken) return;
    const end = Math.min(i + 20_000, blocks.length);
    for (; i < end; i += 1) {
      const block = blocks[i];
      ctx.fillStyle = cssColor(rampColor(block.color));
      ctx.fillRect(block.x0, block.y0, block.x1 - block.x0 + 1, block.y1 - block.y0 + 1);
    }
    if (i < blocks.length) requestAnimationFrame(step);
  };
  step();
  const w = app.state.window;
  el<HTMLSpanElement>("window-label").textContent =
    `rows ${w.row0}-${w.row1}, cols ${w.col0}-${w.col1}`
    + (app.state.history.length ? ` (depth ${app.state.history.length})` : "");
}

function describeCell(cell: Cell): string {
  const a = app.model.instances[cell.row];
  const b = app.model.instances[cell.col];
  return `#${a.id} ${a.type}(${a.n} nodes) x #${b.id} ${b.type}(${b.n} nodes): `
    + `${cell.d} edge${cell.d === 1 ? "" : "s"}, size sum ${cell.sizeSum}`;
}

function inspect(px: number, py: number): void {
  if (!app.layout) return;
  const panel = el<HTMLDivElement>("detail-panel");
  const hits = inspectPixel(app.model, app.layout, px, py);
  if (hits.length === 0) {
    panel.textContent = "no edges at this pixel";
    return;
  }
  panel.innerHTML = "";
  const title = document.createElement("div");
  title.className = "detail-title";
  title.textContent = `${hits.length} cell${hits.length === 1 ? "" : "s"} at pixel (${px}, ${py})`;
  panel.appendChild(title);
  for (const cell of hits) {
    const row = document.createElement("div");
    row.textContent = describeCell(cell);
    panel.appendChild(row);
  }
}

function renderSidebar(): void {
  const seg = el<HTMLTableSectionElement>("segment-rows");
  seg.innerHTML = "";
  for (const s of app.model.segments) {
    const tr = document.createElement("tr");
    tr.innerHTML = `<td>${s.type}</td><td>${s.count}</td><td>${s.offset}</td>`;
    seg.appendChild(tr);
  }
  const meta = app.model.meta;
  el<HTMLDivElement>("meta-panel").textContent =
    `${meta.graph || "graph"}: ${meta.nodes} nodes, ${meta.edges} edges, `
    + `${app.model.matrixSize} structures, ${meta.unclassified_nodes} unclassified`;
}

function loadText(text: string): void {
  try {
    app.model = parseBundleText(text);
  } catch (exc) {
    showError(exc instanceof BundleError ? exc.message : `failed to load: ${exc}`);
    return;
  }
  clearError();
  app.state = createState(app.model);
  renderSidebar();
  draw();
}

function wire(): void {
  const canvas = el<HTMLCanvasElement>("matrix");
  let dragStart: [number, number] | null = null;
  const rubber = el<HTMLDivElement>("rubber-band");

  canvas.addEventListener("mousedown", (e) => {
    dragStart = [e.offsetX, e.offsetY];
  });
  canvas.addEventListener("mousemove", (e) => {
    if (!dragStart) return;
    const rect = canvas.getBoundingClientRect();
    rubber.hidden = false;
    rubber.style.left = `${Math.min(dragStart[0], e.offsetX) + rect.left + window.scrollX}px`;
    rubber.style.top = `${Math.min(dragStart[1], e.offsetY) + rect.top + window.scrollY}px`;
    rubber.style.width = `${Math.abs(e.offsetX - dragStart[0])}px`;
    rubber.style.height = `${Math.abs(e.offsetY - dragStart[1])}px`;
  });
  canvas.addEventListener("mouseup", (e) => {
    rubber.hidden = true;
    if (!dragStart || !app.layout) return;
    const [sx, sy] = dragStart;
    dragStart = null;
    if (Math.abs(e.offsetX - sx) < 4 && Math.abs(e.offsetY - sy) < 4) {
      inspect(e.offsetX, e.offsetY);
      return;
    }
    const win = pixelRectToWindow(app.layout, sx, sy, e.offsetX, e.offsetY);
    if (win) {
      app.state = zoomTo(app.state, app.model, win);
      draw();
    }
  });
  el<HTMLButtonElement>("zoom-out").addEventListener("click", () => {
    app.state = zoomOut(app.state);
    draw();
  });
  el<HTMLButtonElement>("zoom-reset").addEventListener("click", () => {
    app.state = resetZoom(app.state, app.model);
    draw();
  });
  el<HTMLSelectElement>("scale-select").addEventListener("change", (e) => {
    app.state = setScale(app.state, (e.target as HTMLSelectElement).value as ScaleMode);
    draw();
  });
  el<HTMLInputElement>("bundle-file").addEventListener("change", async (e) => {
    const input = e.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file) loadText(await file.text());
  });
}

async function boot(): Promise<void> {
  wire();
  const params = new URLSearchParams(window.location.search);
  const url = params.get("bundle");
  if (url) {
    try {
      const resp = await fetch(url);
      if (!resp.ok) throw new Error(`${resp.status} ${resp.statusText}`);
      loadText(await resp.text());
    } catch (exc) {
      showError(`could not fetch ${url}: ${exc}`);
    }
  }
}

boot();
