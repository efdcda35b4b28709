import { describe, expect, it } from 'vitest';

import { segmentItemText } from '../src/markers.js';
import type { Finding, Item } from '../src/types.js';
import fixture from './fixtures/fixture_run.json';

const items = fixture.items as unknown as Item[];

function marker(finding: Partial<Finding>): Finding {
  return {
    finding_id: 'f1',
    smell: 'Loopholes',
    artifact_id: 'a',
    item_id: 'i',
    token_span: [0, 0],
    char_range: [0, 1],
    matched_text: 'x',
    message: 'm',
    improvement_hint: 'h',
    suppressed_by: null,
    ...finding,
  } as Finding;
}

describe('segmentItemText', () => {
  it('reconstructs the exact item text', () => {
    for (const item of items) {
      const joined = segmentItemText(item.text, item.findings)
        .map((s) => s.text)
        .join('');
      expect(joined).toBe(item.text);
    }
  });

  it('every marker segment equals its finding matched_text', () => {
    for (const item of items) {
      for (const segment of segmentItemText(item.text, item.findings)) {
        for (const finding of segment.findings) {
          expect(segment.text).toBe(finding.matched_text);
        }
      }
    }
  });

  it('covers every finding of the fixture corpus', () => {
    for (const item of items) {
      const covered = segmentItemText(item.text, item.findings).flatMap((s) =>
        s.findings.map((f) => f.finding_id),
      );
      expect(new Set(covered)).toEqual(new Set(item.findings.map((f) => f.finding_id)));
    }
  });

  it('identical spans share one marker', () => {
    const text = 'the best option';
    const a = marker({ finding_id: 'a', char_range: [4, 8], matched_text: 'best' });
    const b = marker({
      finding_id: 'b',
      smell: 'Superlatives',
      char_range: [4, 8],
      matched_text: 'best',
    });
    const segments = segmentItemText(text, [a, b]).filter((s) => s.findings.length > 0);
    expect(segments).toHaveLength(1);
    expect(segments[0].findings.map((f) => f.finding_id)).toEqual(['a', 'b']);
  });

  it('text without findings is one plain segment', () => {
    const segments = segmentItemText('nothing here', []);
    expect(segments).toHaveLength(1);
    expect(segments[0].findings).toHaveLength(0);
  });
});
