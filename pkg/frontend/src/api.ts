/** Service client; a new request cancels any still in flight. */

import type {
  DesignRequest,
  DesignResponse,
  PowerCurveResponse,
  PresetStudy,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  private controller: AbortController | null = null;

  constructor(
    private readonly base: string = '',
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  /** Abort the in-flight request, if any (called on form edits). */
  cancelInFlight(): void {
    this.controller?.abort();
    this.controller = null;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    this.cancelInFlight();
    this.controller = new AbortController();
    const response = await this.fetchImpl(`${this.base}${path}`, {
      ...init,
      signal: this.controller.signal,
    });
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(body.error ?? 'unknown', body.message ?? 'request failed');
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  sampleSize(req: DesignRequest): Promise<DesignResponse> {
    return this.post('/api/sample-size', req);
  }

  powerCurve(req: DesignRequest): Promise<PowerCurveResponse> {
    return this.post('/api/power-curve', req);
  }

  presets(): Promise<PresetStudy[]> {
    return this.request<PresetStudy[]>('/api/presets');
  }
}
