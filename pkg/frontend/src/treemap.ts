// Squarified treemap layout: rectangle area proportional to word count,
// recursing through the folder hierarchy down to artifact leaves.

import type { SmellKind, TreemapNode } from './types.js';

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface LeafRect extends Rect {
  node: TreemapNode;
  density: number;
}

function nodeDensity(node: TreemapNode, smell?: SmellKind): number {
  if (!smell) return node.density;
  const count = node.per_smell[smell] ?? 0;
  return node.word_count > 0 ? (count / node.word_count) * 1000 : 0;
}

function worstAspect(areas: number[], side: number): number {
  const total = areas.reduce((s, a) => s + a, 0);
  const length = total / side;
  let worst = 1;
  for (const area of areas) {
    const other = area / length;
    const ratio = Math.max(length / other, other / length);
    if (ratio > worst) worst = ratio;
  }
  return worst;
}

/** Lay out one level of children inside bounds; returns each child's rect. */
export function squarify(values: number[], bounds: Rect): Rect[] {
  const rects: Rect[] = new Array(values.length);
  const total = values.reduce((s, v) => s + v, 0);
  if (values.length === 0 || total <= 0) {
    return values.map(() => ({ x: bounds.x, y: bounds.y, w: 0, h: 0 }));
  }
  const scale = (bounds.w * bounds.h) / total;
  const order = values
    .map((value, index) => ({ area: value * scale, index }))
    .sort((a, b) => b.area - a.area);

  let free: Rect = { ...bounds };
  let row: { area: number; index: number }[] = [];
  let i = 0;

  const placeRow = () => {
    const side = Math.min(free.w, free.h);
    const rowArea = row.reduce((s, e) => s + e.area, 0);
    const thickness = side > 0 ? rowArea / side : 0;
    let offset = 0;
    for (const entry of row) {
      const extent = thickness > 0 ? entry.area / thickness : 0;
      if (free.w >= free.h) {
        rects[entry.index] = { x: free.x, y: free.y + offset, w: thickness, h: extent };
      } else {
        rects[entry.index] = { x: free.x + offset, y: free.y, w: extent, h: thickness };
      }
      offset += extent;
    }
    if (free.w >= free.h) {
      free = { x: free.x + thickness, y: free.y, w: free.w - thickness, h: free.h };
    } else {
      free = { x: free.x, y: free.y + thickness, w: free.w, h: free.h - thickness };
    }
    row = [];
  };

  while (i < order.length) {
    const side = Math.min(free.w, free.h);
    const candidate = [...row, order[i]];
    const current = row.length === 0 ? Infinity : worstAspect(row.map((e) => e.area), side);
    const withNext = worstAspect(candidate.map((e) => e.area), side);
    if (withNext <= current) {
      row = candidate;
      i += 1;
    } else {
      placeRow();
    }
  }
  if (row.length > 0) placeRow();
  return rects;
}

/** Recursive layout down to artifact leaves. */
export function layoutTreemap(
  root: TreemapNode,
  bounds: Rect,
  smell?: SmellKind,
  padding = 2,
): LeafRect[] {
  const leaves: LeafRect[] = [];
  const visit = (node: TreemapNode, rect: Rect) => {
    if (node.children.length === 0) {
      leaves.push({ ...rect, node, density: nodeDensity(node, smell) });
      return;
    }
    const inner: Rect = {
      x: rect.x + padding,
      y: rect.y + padding,
      w: Math.max(rect.w - 2 * padding, 0),
      h: Math.max(rect.h - 2 * padding, 0),
    };
    const rects = squarify(node.children.map((c) => c.word_count), inner);
    node.children.forEach((child, i) => visit(child, rects[i]));
  };
  visit(root, bounds);
  return leaves;
}
