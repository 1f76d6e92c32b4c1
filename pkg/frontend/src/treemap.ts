/** Squarified treemap layout.
 *
 * Tiles are returned in input order; the caller feeds children ascending by
 * byte size (the order the artifact already carries). The classical
 * formulation expects descending weights, so aspect ratios are slightly
 * worse near the start of a row; that trade-off is deliberate.
 */

import type { Rect } from "./types.js";

/** Tile weight for a node: log scale tames the huge variance in byte sizes. */
export function byteWeight(bytes: number): number {
  return Math.log2(1 + bytes);
}

/** Lay out `weights` inside `rect`; returns one sub-rect per weight, in order. */
export function layoutTreemap(weights: number[], rect: Rect): Rect[] {
  if (weights.length === 0) return [];
  const total = weights.reduce((a, b) => a + b, 0);
  // Zero-weight sets fall back to an equal split (uniform weights).
  const effective = total > 0 ? weights : weights.map(() => 1);
  const effectiveTotal = total > 0 ? total : weights.length;
  const scale = (rect.w * rect.h) / effectiveTotal;
  const areas = effective.map((w) => w * scale);
  const result: Rect[] = new Array(areas.length);
  squarify(areas, [...areas.keys()], rect, result);
  return result;
}

function worstRatio(rowAreas: number[], side: number): number {
  const sum = rowAreas.reduce((a, b) => a + b, 0);
  if (sum <= 0 || side <= 0) return Infinity;
  const rowThickness = sum / side;
  let worst = 0;
  for (const area of rowAreas) {
    if (area <= 0) return Infinity;
    const itemLength = area / rowThickness;
    worst = Math.max(worst, rowThickness / itemLength, itemLength / rowThickness);
  }
  return worst;
}

function squarify(areas: number[], indices: number[], rect: Rect, result: Rect[]): void {
  if (indices.length === 0) return;
  if (indices.length === 1) {
    result[indices[0]] = { ...rect };
    return;
  }
  const side = Math.min(rect.w, rect.h);
  const row: number[] = [indices[0]];
  let rowAreas: number[] = [areas[indices[0]]];
  let rest = indices.slice(1);
  while (rest.length > 0) {
    const candidate = [...rowAreas, areas[rest[0]]];
    if (worstRatio(candidate, side) <= worstRatio(rowAreas, side)) {
      row.push(rest[0]);
      rowAreas = candidate;
      rest = rest.slice(1);
    } else {
      break;
    }
  }
  const rowSum = rowAreas.reduce((a, b) => a + b, 0);
  if (rect.w >= rect.h) {
    // vertical strip on the left
    const stripWidth = rowSum / rect.h;
    let y = rect.y;
    for (let i = 0; i < row.length; i++) {
      const h = rowAreas[i] / stripWidth;
      result[row[i]] = { x: rect.x, y, w: stripWidth, h };
      y += h;
    }
    squarify(areas, rest, { x: rect.x + stripWidth, y: rect.y, w: rect.w - stripWidth, h: rect.h }, result);
  } else {
    // horizontal strip on top
    const stripHeight = rowSum / rect.w;
    let x = rect.x;
    for (let i = 0; i < row.length; i++) {
      const w = rowAreas[i] / stripHeight;
      result[row[i]] = { x, y: rect.y, w, h: stripHeight };
      x += w;
    }
    squarify(areas, rest, { x: rect.x, y: rect.y + stripHeight, w: rect.w, h: rect.h - stripHeight }, result);
  }
}
