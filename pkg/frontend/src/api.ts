// Thin fetch client for the review service. Every UI mutation corresponds
// to exactly one documented API call.

import type {
  ArtifactItems,
  ArtifactMetrics,
  FindingDetail,
  ReviewRecord,
  RunHeader,
  SmellKind,
  TreemapNode,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let code = 'error';
    let message = `${response.status}`;
    try {
      const body = await response.json();
      code = body.code ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, code, message);
  }
  return (await response.json()) as T;
}

export interface ItemQuery {
  includeRejected?: boolean;
  includeSuppressed?: boolean;
  smells?: SmellKind[];
}

export class ApiClient {
  constructor(private base: string = '/api/v1') {}

  listRuns(): Promise<RunHeader[]> {
    return request(`${this.base}/runs`);
  }

  artifacts(run: string): Promise<ArtifactMetrics[]> {
    return request(`${this.base}/runs/${encodeURIComponent(run)}/artifacts`);
  }

  items(run: string, artifactId: string, query: ItemQuery = {}): Promise<ArtifactItems> {
    const params = new URLSearchParams();
    if (query.includeRejected) params.set('include_rejected', 'true');
    if (query.includeSuppressed) params.set('include_suppressed', 'true');
    if (query.smells && query.smells.length > 0) params.set('smells', query.smells.join(','));
    const suffix = params.toString() ? `?${params}` : '';
    return request(
      `${this.base}/runs/${encodeURIComponent(run)}/artifacts/${artifactId}/items${suffix}`,
    );
  }

  treemap(run: string, smell?: SmellKind): Promise<TreemapNode> {
    const suffix = smell ? `?smell=${encodeURIComponent(smell)}` : '';
    return request(`${this.base}/runs/${encodeURIComponent(run)}/treemap${suffix}`);
  }

  findingDetail(run: string, findingId: string): Promise<FindingDetail> {
    return request(
      `${this.base}/runs/${encodeURIComponent(run)}/findings/${encodeURIComponent(findingId)}`,
    );
  }

  putReview(
    run: string,
    findingId: string,
    body: { status: string; comment?: string | null; reviewer?: string | null },
  ): Promise<ReviewRecord> {
    return request(
      `${this.base}/runs/${encodeURIComponent(run)}/findings/${encodeURIComponent(findingId)}/review`,
      {
        method: 'PUT',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
      },
    );
  }
}
