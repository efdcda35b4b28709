// Spell-checker-style segmentation: split an item's text into plain runs
// and marker runs, one marker per distinct finding span.

import type { Finding } from './types.js';

export interface Segment {
  start: number;
  end: number;
  text: string;
  // Findings anchored at exactly this span (identical-range findings share
  // one marker). Empty for plain text runs.
  findings: Finding[];
}

/**
 * Split item text into alternating plain/marker segments.
 *
 * Findings with identical spans share a marker; a finding that partially
 * overlaps an earlier marker joins that marker's popup instead of breaking
 * the text into nested highlights (overlap across kinds is legal and both
 * findings stay reported).
 */
export function segmentItemText(text: string, findings: Finding[]): Segment[] {
  const ordered = [...findings].sort(
    (a, b) => a.char_range[0] - b.char_range[0] || a.char_range[1] - b.char_range[1],
  );
  const segments: Segment[] = [];
  let cursor = 0;
  for (const finding of ordered) {
    const [start, end] = finding.char_range;
    const last = segments[segments.length - 1];
    if (last && last.findings.length > 0 && start < last.end) {
      last.findings.push(finding);
      continue;
    }
    if (start > cursor) {
      segments.push({ start: cursor, end: start, text: text.slice(cursor, start), findings: [] });
    }
    segments.push({ start, end, text: text.slice(start, end), findings: [finding] });
    cursor = end;
  }
  if (cursor < text.length) {
    segments.push({ start: cursor, end: text.length, text: text.slice(cursor), findings: [] });
  }
  return segments;
}
