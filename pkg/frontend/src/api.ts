// Thin typed client over the service HTTP API.
//
// The base URL comes from (in order) the constructor argument, the global
// `window.MUFAHRIS_API`, or the default local service address.

import type {
  Exercise,
  GradingReport,
  IngestResult,
  PedagogicalContext,
  SearchRow,
  SessionOpened,
  TextRow,
} from './types.js';

export const DEFAULT_BASE_URL = 'http://127.0.0.1:8750';

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.status = status;
    this.code = code;
  }
}

declare global {
  interface Window {
    MUFAHRIS_API?: string;
  }
}

export interface ClientOptions {
  baseUrl?: string;
  teacherToken?: string;
  fetchImpl?: typeof fetch;
}

export class ApiClient {
  readonly baseUrl: string;
  teacherToken: string;
  private readonly fetchImpl: typeof fetch;

  constructor(options: ClientOptions = {}) {
    const fromWindow = typeof window !== 'undefined' ? window.MUFAHRIS_API : undefined;
    this.baseUrl = (options.baseUrl ?? fromWindow ?? DEFAULT_BASE_URL).replace(/\/$/, '');
    this.teacherToken = options.teacherToken ?? '';
    this.fetchImpl = options.fetchImpl ?? fetch;
  }

  private async request<T>(path: string, init: RequestInit = {}, auth = false): Promise<T> {
    const headers: Record<string, string> = { 'Content-Type': 'application/json' };
    if (auth) {
      headers['Authorization'] = `Bearer ${this.teacherToken}`;
    }
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, { ...init, headers });
    } catch (err) {
      throw new ApiError(0, 'unreachable', `service unreachable: ${String(err)}`);
    }
    const text = await response.text();
    let body: unknown = null;
    if (text) {
      try {
        body = JSON.parse(text);
      } catch {
        body = null;
      }
    }
    if (!response.ok) {
      const err = (body as { error?: { code?: string; message?: string } } | null)?.error;
      throw new ApiError(response.status, err?.code ?? 'http-error', err?.message ?? text);
    }
    return body as T;
  }

  health(): Promise<{ status: string; texts: number }> {
    return this.request('/health');
  }

  listTexts(): Promise<{ texts: TextRow[] }> {
    return this.request('/texts');
  }

  ingestText(title: string, body: string, lomFields?: Record<string, string>): Promise<IngestResult> {
    return this.request(
      '/texts',
      { method: 'POST', body: JSON.stringify({ title, body, lomFields }) },
      true,
    );
  }

  search(context: PedagogicalContext): Promise<{ results: SearchRow[] }> {
    return this.request('/search', { method: 'POST', body: JSON.stringify(context) });
  }

  generateExercise(
    textId: string,
    type: string,
    feature?: { kind: string; value: string },
    params?: Record<string, unknown>,
  ): Promise<Exercise> {
    return this.request(`/texts/${textId}/exercises`, {
      method: 'POST',
      body: JSON.stringify({ type, feature, params }),
    });
  }

  gradeExercise(exerciseId: string, responses: Record<string, string>): Promise<GradingReport> {
    return this.request(`/exercises/${exerciseId}/answers`, {
      method: 'POST',
      body: JSON.stringify({ responses }),
    });
  }

  openSession(context: PedagogicalContext, seed = 0): Promise<SessionOpened> {
    return this.request('/sessions', {
      method: 'POST',
      body: JSON.stringify({ pedagogicalContext: context, seed }),
    });
  }

  submitAnswers(sessionId: string, responses: Record<string, string>): Promise<GradingReport> {
    return this.request(`/sessions/${sessionId}/answers`, {
      method: 'POST',
      body: JSON.stringify({ responses }),
    });
  }

  nextExercise(sessionId: string): Promise<{ exercise: Exercise }> {
    return this.request(`/sessions/${sessionId}/next`, { method: 'POST' });
  }
}
