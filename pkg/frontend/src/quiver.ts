// SVG quiver rendering.  Mutable vertices are clickable; frozen vertices are
// drawn square-ish and get no click handler at all, so clicking them cannot
// issue a request.

import type { Label, QuiverDoc } from "./api";
import { layoutQuiver } from "./layout";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface QuiverView {
  onVertexClick?: (label: Label) => void;
  highlighted?: Set<string>;
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export function renderQuiver(svg: SVGSVGElement, quiver: QuiverDoc, view: QuiverView): void {
  svg.replaceChildren();
  const width = Number(svg.getAttribute("width") ?? 480);
  const height = Number(svg.getAttribute("height") ?? 360);
  const pos = layoutQuiver(quiver, width, height);
  const frozen = new Set(quiver.frozen.map(String));

  for (const arrow of quiver.arrows) {
    const p = pos.get(arrow.from)!;
    const q = pos.get(arrow.to)!;
    const dx = q.x - p.x;
    const dy = q.y - p.y;
    const d = Math.max(Math.hypot(dx, dy), 1);
    const sx = p.x + (18 * dx) / d;
    const sy = p.y + (18 * dy) / d;
    const tx = q.x - (22 * dx) / d;
    const ty = q.y - (22 * dy) / d;
    const line = el("line", {
      x1: String(sx),
      y1: String(sy),
      x2: String(tx),
      y2: String(ty),
      class: "arrow",
      "marker-end": "url(#arrowhead)",
    });
    svg.appendChild(line);
    if (arrow.weight !== "1") {
      const text = el("text", {
        x: String((sx + tx) / 2 + 6),
        y: String((sy + ty) / 2 - 6),
        class: "arrow-weight",
      });
      text.textContent = arrow.weight;
      svg.appendChild(text);
    }
  }

  const defs = el("defs", {});
  const marker = el("marker", {
    id: "arrowhead",
    markerWidth: "8",
    markerHeight: "8",
    refX: "6",
    refY: "3",
    orient: "auto",
  });
  marker.appendChild(el("path", { d: "M0,0 L6,3 L0,6 Z", class: "arrowhead" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const label of quiver.vertices) {
    const p = pos.get(label)!;
    const isFrozen = frozen.has(String(label));
    const group = el("g", {
      class:
        "vertex " +
        (isFrozen ? "frozen" : "mutable") +
        (view.highlighted?.has(String(label)) ? " highlighted" : ""),
      "data-vertex": String(label),
    });
    const shape = isFrozen
      ? el("rect", { x: String(p.x - 14), y: String(p.y - 14), width: "28", height: "28", rx: "4" })
      : el("circle", { cx: String(p.x), cy: String(p.y), r: "16" });
    group.appendChild(shape);
    const text = el("text", { x: String(p.x), y: String(p.y + 4), "text-anchor": "middle" });
    text.textContent = String(label);
    group.appendChild(text);
    if (!isFrozen && view.onVertexClick) {
      group.addEventListener("click", () => view.onVertexClick!(label));
    }
    svg.appendChild(group);
  }
}
