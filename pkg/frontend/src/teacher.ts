// Teacher flow: search ranked texts for a context (Fig-10 style table),
// pick a text number and a script (exercise type), preview the result.

import { ApiClient, ApiError } from './api.js';
import { renderErrorBanner, renderExercise, renderResultsTable } from './render.js';
import type { PedagogicalContext, SearchRow } from './types.js';

export class TeacherView {
  private readonly api: ApiClient;
  private readonly tableRoot: HTMLElement;
  private readonly previewRoot: HTMLElement;
  private rows: SearchRow[] = [];

  constructor(api: ApiClient, tableRoot: HTMLElement, previewRoot: HTMLElement) {
    this.api = api;
    this.tableRoot = tableRoot;
    this.previewRoot = previewRoot;
  }

  async search(context: PedagogicalContext): Promise<void> {
    try {
      const { results } = await this.api.search(context);
      this.rows = results;
      if (results.length === 0) {
        this.tableRoot.innerHTML = renderErrorBanner('no-results', 'لا يوجد نص موافق لطلبك');
        return;
      }
      this.tableRoot.innerHTML =
        '<p dir="rtl">تفضل مجموعة النصوص الموافقة لطلبك مرتبة حسب معدل الأفعال مقارنة بعدد الأسطر</p>' +
        renderResultsTable(results);
    } catch (err) {
      this.tableRoot.innerHTML = this.errorHtml(err);
    }
  }

  /** Resolve a 1-based rank number (as typed by the teacher) to a text id. */
  textIdForNumber(num: number): string | null {
    const row = this.rows.find((r) => r.rank === num);
    return row ? row.textId : null;
  }

  async pickTextAndScript(num: number, exerciseType: string, featureKind: string, featureValue: string): Promise<void> {
    const textId = this.textIdForNumber(num);
    if (textId === null) {
      this.previewRoot.innerHTML = renderErrorBanner('invalid-number', 'رقم النص غير موجود في القائمة');
      return;
    }
    try {
      const exercise = await this.api.generateExercise(textId, exerciseType, {
        kind: featureKind,
        value: featureValue,
      });
      this.previewRoot.innerHTML = renderExercise(exercise);
    } catch (err) {
      this.previewRoot.innerHTML = this.errorHtml(err);
    }
  }

  private errorHtml(err: unknown): string {
    const apiErr = err instanceof ApiError ? err : new ApiError(0, 'client-error', String(err));
    return renderErrorBanner(apiErr.code, apiErr.message);
  }
}
