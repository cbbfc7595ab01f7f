// Thin client for the squab service; the UI computes nothing itself -
// every n/k/violation/rate comes from these endpoints.

import type {
  Cellulation,
  CodeInfo,
  JobSnapshot,
  SweepResultDoc,
  SweepSettings,
  ValidationResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class SquabApi {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body !== undefined ? { 'content-type': 'application/json' } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await response.text();
    let data: unknown = null;
    try {
      data = text ? JSON.parse(text) : null;
    } catch {
      // non-JSON error body; keep text for the message
    }
    if (!response.ok) {
      const detail =
        data && typeof data === 'object' && 'detail' in data
          ? String((data as { detail: unknown }).detail)
          : text;
      throw new ApiError(response.status, detail || `HTTP ${response.status}`);
    }
    return data as T;
  }

  validate(lattice: Cellulation): Promise<ValidationResponse> {
    return this.request('POST', '/api/lattices/validate', lattice);
  }

  info(lattice: Cellulation): Promise<CodeInfo> {
    return this.request('POST', '/api/lattices/info', lattice);
  }

  fetchToric(d: number): Promise<Cellulation> {
    return this.request('GET', `/api/generators/toric?d=${d}`);
  }

  fetchBk(d: number): Promise<Cellulation> {
    return this.request('GET', `/api/generators/bk?d=${d}`);
  }

  async submitBenchmark(lattice: Cellulation, sweep: SweepSettings): Promise<string> {
    const out = await this.request<{ id: string }>('POST', '/api/benchmarks', {
      lattice,
      sweep,
    });
    return out.id;
  }

  jobStatus(id: string): Promise<JobSnapshot> {
    return this.request('GET', `/api/benchmarks/${id}`);
  }

  jobResult(id: string): Promise<SweepResultDoc> {
    return this.request('GET', `/api/benchmarks/${id}/result`);
  }

  cancelJob(id: string): Promise<JobSnapshot> {
    return this.request('DELETE', `/api/benchmarks/${id}`);
  }

  /** Poll a job until it settles; reports progress in [0, 1]. */
  async waitForJob(
    id: string,
    onProgress?: (fraction: number) => void,
    pollMs = 150,
  ): Promise<JobSnapshot> {
    for (;;) {
      const status = await this.jobStatus(id);
      if (onProgress && status.progress.total_trials > 0) {
        onProgress(status.progress.completed_trials / status.progress.total_trials);
      }
      if (status.state === 'done' || status.state === 'failed') return status;
      await new Promise((resolve) => setTimeout(resolve, pollMs));
    }
  }
}
