// Student flow: pick a context, receive exercises, submit, see the
// red/green correction and the n/m score, move to the next exercise
// until the collection is exhausted.

import { ApiClient, ApiError } from './api.js';
import {
  renderErrorBanner,
  renderExercise,
  renderExhausted,
  renderReport,
} from './render.js';
import type { Exercise, PedagogicalContext } from './types.js';

export function collectResponses(root: ParentNode, exercise: Exercise): Record<string, string> {
  const responses: Record<string, string> = {};
  for (const item of exercise.items) {
    const radio = root.querySelector<HTMLInputElement>(
      `input[type=radio][name="${item.itemId}"]:checked`,
    );
    if (radio) {
      responses[item.itemId] = radio.value;
      continue;
    }
    const field = root.querySelector<HTMLInputElement | HTMLSelectElement>(
      `select[name="${item.itemId}"], input[name="${item.itemId}"]`,
    );
    responses[item.itemId] = field ? field.value : '';
  }
  return responses;
}

export class StudentView {
  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private sessionId: string | null = null;
  private exercise: Exercise | null = null;
  private pending = false;

  constructor(api: ApiClient, root: HTMLElement) {
    this.api = api;
    this.root = root;
  }

  async start(context: PedagogicalContext): Promise<void> {
    try {
      const opened = await this.api.openSession(context);
      this.sessionId = opened.sessionId;
      this.showExercise(opened.exercise);
    } catch (err) {
      this.showError(err);
    }
  }

  private showExercise(exercise: Exercise): void {
    this.exercise = exercise;
    this.root.innerHTML =
      renderExercise(exercise) +
      '<div class="actions" dir="rtl">' +
      '<button id="submit-answers">تثبيت</button> ' +
      '<button id="repeat-exercise">إعادة التمرين</button> ' +
      '<button id="next-exercise">التمرين الموالي</button>' +
      '</div><div id="correction"></div>';
    this.bind('submit-answers', () => this.submit());
    this.bind('repeat-exercise', () => this.repeat());
    this.bind('next-exercise', () => this.next());
  }

  private bind(id: string, handler: () => void): void {
    const el = this.root.querySelector<HTMLButtonElement>(`#${id}`);
    if (el) {
      el.addEventListener('click', handler);
    }
  }

  async submit(): Promise<void> {
    if (!this.sessionId || !this.exercise || this.pending) return;
    const responses = collectResponses(this.root, this.exercise);
    if (Object.values(responses).every((v) => v === '')) {
      this.correction(renderErrorBanner('empty-submission', 'أجب عن سؤال واحد على الأقل'));
      return;
    }
    this.pending = true;
    try {
      const report = await this.api.submitAnswers(this.sessionId, responses);
      this.correction(renderReport(report));
    } catch (err) {
      this.showError(err);
    } finally {
      this.pending = false;
    }
  }

  repeat(): void {
    // Reset inputs client-side and re-grade against the same exercise id.
    if (this.exercise) {
      this.showExercise(this.exercise);
    }
  }

  async next(): Promise<void> {
    if (!this.sessionId || this.pending) return;
    this.pending = true;
    try {
      const { exercise } = await this.api.nextExercise(this.sessionId);
      this.showExercise(exercise);
    } catch (err) {
      if (err instanceof ApiError && err.code === 'collection-exhausted') {
        this.root.innerHTML = renderExhausted();
      } else {
        this.showError(err);
      }
    } finally {
      this.pending = false;
    }
  }

  private correction(html: string): void {
    const target = this.root.querySelector('#correction');
    if (target) {
      target.innerHTML = html;
    }
  }

  private showError(err: unknown): void {
    const apiErr = err instanceof ApiError ? err : new ApiError(0, 'client-error', String(err));
    this.root.innerHTML = renderErrorBanner(apiErr.code, apiErr.message);
  }
}
