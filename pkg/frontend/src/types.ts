// Wire types mirroring the service JSON.

export interface FeatureSelector {
  kind: string;
  value: string;
}

export interface PedagogicalContext {
  level: number;
  category: 'morphology-conjugation' | 'sentence-composition';
  targetFeature: FeatureSelector;
  role: 'teacher' | 'learner';
  difficultyMax?: string;
  ageRange?: string;
}

export interface ExerciseItem {
  itemId: string;
  prompt: string;
  options?: string[];
}

export interface Exercise {
  exerciseId: string;
  sourceTextId: string;
  type: 'ClozeBank' | 'ClozeSelect' | 'MultipleChoice' | 'QuestionAnswer';
  renderedBody: string;
  diacriticSensitive: boolean;
  items: ExerciseItem[];
  bank?: string[];
}

export interface ItemVerdict {
  itemId: string;
  given: string;
  expected: string;
  correct: boolean;
  colorHint: 'green' | 'red';
}

export interface GradingReport {
  perItem: ItemVerdict[];
  score: { numerator: number; denominator: number };
}

export interface SearchRow {
  rank: number;
  textId: string;
  title: string;
  lineCount: number;
  verbCount: number;
  verbsPerLine: string;
  score: string;
}

export interface SessionOpened {
  sessionId: string;
  collectionSize: number;
  exercise: Exercise;
}

export interface TextRow {
  textId: string;
  title: string;
  createdAt: string;
}

export interface IngestResult {
  textId: string;
  profile: Record<string, number | string | null>;
}
