// Pure HTML renderers. No DOM access here: every function maps data to a
// string, which keeps the view logic unit-testable. Correction colors are
// read exclusively from GradingReport.colorHint; the client never decides
// correctness on its own.

import type { Exercise, GradingReport, SearchRow } from './types.js';

const BLANK = /«___(\d+)»/g;

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function optionList(name: string, options: string[]): string {
  const opts = ['<option value="">—</option>']
    .concat(options.map((o) => `<option value="${escapeHtml(o)}">${escapeHtml(o)}</option>`))
    .join('');
  return `<select class="blank" name="${name}">${opts}</select>`;
}

function radioGroup(name: string, options: string[]): string {
  return options
    .map(
      (o) =>
        `<label class="choice"><input type="radio" name="${name}" value="${escapeHtml(o)}"> ${escapeHtml(o)}</label>`,
    )
    .join('');
}

function bodyWithControls(ex: Exercise, control: (itemId: string, n: number) => string): string {
  return escapeHtml(ex.renderedBody).replace(BLANK, (_, num: string) => control(`item${num}`, Number(num)));
}

export function renderExercise(ex: Exercise): string {
  const parts: string[] = [`<div class="exercise" dir="rtl" data-exercise-id="${ex.exerciseId}">`];
  switch (ex.type) {
    case 'ClozeBank': {
      parts.push('<p class="instruction">املأ الفراغات بما يناسب من الكلمات التالية:</p>');
      const bank = ex.bank ?? [];
      parts.push(
        `<p class="bank">${bank.map((w) => `<span class="bank-word">${escapeHtml(w)}</span>`).join(' - ')}</p>`,
      );
      parts.push(`<p class="body">${bodyWithControls(ex, (id) => optionList(id, bank))}</p>`);
      break;
    }
    case 'ClozeSelect': {
      parts.push('<p class="instruction">أتم الفراغات بما يناسب:</p>');
      const byId = new Map(ex.items.map((item) => [item.itemId, item.options ?? []]));
      parts.push(
        `<p class="body">${bodyWithControls(ex, (id) => optionList(id, byId.get(id) ?? []))}</p>`,
      );
      break;
    }
    case 'MultipleChoice': {
      parts.push('<p class="instruction">أذكر في أي زمن ورد الفعل:</p>');
      for (const item of ex.items) {
        parts.push(
          `<div class="mcq-item" data-item-id="${item.itemId}">` +
            `<p class="prompt">${escapeHtml(item.prompt)}</p>` +
            radioGroup(item.itemId, item.options ?? []) +
            '</div>',
        );
      }
      break;
    }
    case 'QuestionAnswer': {
      parts.push(`<p class="body">"${escapeHtml(ex.renderedBody)}"</p>`);
      for (const item of ex.items) {
        parts.push(
          `<div class="qa-item" data-item-id="${item.itemId}">` +
            `<label>${escapeHtml(item.prompt)} <input type="text" dir="rtl" name="${item.itemId}"></label>` +
            '</div>',
        );
      }
      break;
    }
  }
  parts.push('</div>');
  return parts.join('\n');
}

export function renderReport(report: GradingReport): string {
  const rows = report.perItem
    .map(
      (v) =>
        `<li class="verdict ${v.colorHint}" data-item-id="${v.itemId}">` +
        `<span class="given">${escapeHtml(v.given || '—')}</span>` +
        (v.correct ? '' : ` <span class="expected">(الصواب: ${escapeHtml(v.expected)})</span>`) +
        '</li>',
    )
    .join('');
  const { numerator, denominator } = report.score;
  return (
    `<div class="report" dir="rtl"><ul>${rows}</ul>` +
    `<p class="score">العدد المتحصل عليه في هذا التمرين : ${numerator}/${denominator}</p></div>`
  );
}

export function renderResultsTable(rows: SearchRow[]): string {
  // Server order is authoritative; no client-side re-sorting.
  const body = rows
    .map(
      (r) =>
        `<tr data-text-id="${r.textId}"><td>${r.rank}</td>` +
        `<td>${escapeHtml(r.title)}</td>` +
        `<td>${r.lineCount}</td><td>${r.verbCount}</td><td>${escapeHtml(r.verbsPerLine)}</td></tr>`,
    )
    .join('');
  return (
    '<table class="results" dir="rtl"><thead><tr>' +
    '<th>#</th><th>العنوان</th><th>عدد الأسطر</th><th>عدد الأفعال</th><th>المعدل</th>' +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderErrorBanner(code: string, message: string): string {
  return `<div class="banner error" dir="rtl" data-code="${escapeHtml(code)}">${escapeHtml(message)}</div>`;
}

export function renderExhausted(): string {
  return '<div class="banner done" dir="rtl">لا توجد تمارين أخرى في هذه المجموعة</div>';
}

export function blanksOf(ex: Exercise): string[] {
  return ex.items.map((item) => item.itemId);
}
