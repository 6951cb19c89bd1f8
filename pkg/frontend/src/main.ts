// Page wiring: two routes (student / teacher) over one ApiClient.

import { ApiClient } from './api.js';
import { StudentView } from './student.js';
import { TeacherView } from './teacher.js';
import type { PedagogicalContext } from './types.js';

function value(id: string): string {
  return (document.getElementById(id) as HTMLInputElement | HTMLSelectElement).value;
}

function contextFromForm(prefix: string, role: 'teacher' | 'learner'): PedagogicalContext {
  const category = value(`${prefix}-category`) as PedagogicalContext['category'];
  const level = Number(value(`${prefix}-level`));
  const featureValue = value(`${prefix}-feature`);
  const targetFeature =
    category === 'morphology-conjugation'
      ? { kind: 'verb-tense', value: featureValue }
      : { kind: 'sentence-kind', value: featureValue };
  const context: PedagogicalContext = { level, category, targetFeature, role };
  const difficulty = value(`${prefix}-difficulty`);
  if (difficulty) {
    context.difficultyMax = difficulty;
  }
  return context;
}

function syncFeatureOptions(prefix: string): void {
  const category = value(`${prefix}-category`);
  const feature = document.getElementById(`${prefix}-feature`) as HTMLSelectElement;
  const level = document.getElementById(`${prefix}-level`) as HTMLSelectElement;
  if (category === 'morphology-conjugation') {
    feature.innerHTML =
      '<option value="past">الماضي</option>' +
      '<option value="present">المضارع</option>' +
      '<option value="imperative">الأمر</option>';
    level.value = '1';
  } else {
    feature.innerHTML =
      '<option value="verbal">جملة فعلية</option>' +
      '<option value="nominal">جملة إسمية</option>';
    level.value = '2';
  }
}

function main(): void {
  const api = new ApiClient();

  for (const tab of Array.from(document.querySelectorAll<HTMLButtonElement>('.tab'))) {
    tab.addEventListener('click', () => {
      document.querySelectorAll('.view').forEach((v) => v.classList.remove('active'));
      document.querySelectorAll('.tab').forEach((t) => t.classList.remove('active'));
      tab.classList.add('active');
      document.getElementById(tab.dataset.view!)!.classList.add('active');
    });
  }

  const studentRoot = document.getElementById('student-exercise')!;
  const student = new StudentView(api, studentRoot);
  for (const prefix of ['student', 'teacher']) {
    syncFeatureOptions(prefix);
    document
      .getElementById(`${prefix}-category`)!
      .addEventListener('change', () => syncFeatureOptions(prefix));
  }
  document.getElementById('student-start')!.addEventListener('click', () => {
    void student.start(contextFromForm('student', 'learner'));
  });

  const teacher = new TeacherView(
    api,
    document.getElementById('teacher-results')!,
    document.getElementById('teacher-preview')!,
  );
  document.getElementById('teacher-search')!.addEventListener('click', () => {
    api.teacherToken = value('teacher-token');
    void teacher.search(contextFromForm('teacher', 'teacher'));
  });
  document.getElementById('teacher-generate')!.addEventListener('click', () => {
    const num = Number(value('teacher-text-number'));
    const script = value('teacher-script');
    const category = value('teacher-category');
    const featureKind = category === 'morphology-conjugation' ? 'verb-tense' : 'sentence-kind';
    void teacher.pickTextAndScript(num, script, featureKind, value('teacher-feature'));
  });
}

document.addEventListener('DOMContentLoaded', main);
