// Deterministic force-directed layout: seeded from the vertex labels so the
// same quiver always renders identically (reproducible screenshots).

import type { Label, QuiverDoc } from "./api";

export interface Point {
  x: number;
  y: number;
}

function hashString(text: string): number {
  let h = 2166136261;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutQuiver(quiver: QuiverDoc, width = 480, height = 360): Map<Label, Point> {
  const labels = [...quiver.vertices];
  const rng = mulberry32(hashString(labels.map(String).join("|")));
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 50;
  const pos = new Map<Label, Point>();
  labels.forEach((label, i) => {
    const angle = (2 * Math.PI * i) / labels.length + 0.2 * (rng() - 0.5);
    pos.set(label, {
      x: cx + radius * Math.cos(angle) + 8 * (rng() - 0.5),
      y: cy + radius * Math.sin(angle) + 8 * (rng() - 0.5),
    });
  });
  const springs = quiver.arrows.map((a) => [a.from, a.to] as const);
  for (let iter = 0; iter < 120; iter++) {
    const force = new Map<Label, Point>(labels.map((l) => [l, { x: 0, y: 0 }]));
    for (let i = 0; i < labels.length; i++) {
      for (let j = i + 1; j < labels.length; j++) {
        const p = pos.get(labels[i])!;
        const q = pos.get(labels[j])!;
        const dx = p.x - q.x;
        const dy = p.y - q.y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const push = 2200 / d2;
        const fi = force.get(labels[i])!;
        const fj = force.get(labels[j])!;
        const d = Math.sqrt(d2);
        fi.x += (push * dx) / d;
        fi.y += (push * dy) / d;
        fj.x -= (push * dx) / d;
        fj.y -= (push * dy) / d;
      }
    }
    for (const [a, b] of springs) {
      const p = pos.get(a)!;
      const q = pos.get(b)!;
      const dx = q.x - p.x;
      const dy = q.y - p.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = 0.02 * (d - 110);
      const fa = force.get(a)!;
      const fb = force.get(b)!;
      fa.x += pull * (dx / d);
      fa.y += pull * (dy / d);
      fb.x -= pull * (dx / d);
      fb.y -= pull * (dy / d);
    }
    for (const label of labels) {
      const p = pos.get(label)!;
      const f = force.get(label)!;
      f.x += 0.01 * (cx - p.x);
      f.y += 0.01 * (cy - p.y);
      p.x = Math.min(width - 30, Math.max(30, p.x + 0.9 * f.x));
      p.y = Math.min(height - 30, Math.max(30, p.y + 0.9 * f.y));
    }
  }
  return pos;
}
