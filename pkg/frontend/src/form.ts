/** Rating form model: native questionnaire scales, completion gating, clamping. */

import type { RatingsPayload } from "./types.js";

export interface ScaleSpec {
  key: string;
  label: string;
  min: number;
  max: number;
  step: number;
}

/** One control per questionnaire item, on its native scale. */
export const FORM_SCALES: ScaleSpec[] = [
  { key: "trust", label: "Trust in automation (subscale mean)", min: 1, max: 5, step: 0.1 },
  { key: "understanding", label: "Understanding (subscale mean)", min: 1, max: 5, step: 0.1 },
  { key: "mental_demand", label: "Mental demand", min: 1, max: 20, step: 1 },
  { key: "safety_anxious_relaxed", label: "Anxious / relaxed", min: -3, max: 3, step: 1 },
  { key: "safety_agitated_calm", label: "Agitated / calm", min: -3, max: 3, step: 1 },
  { key: "safety_unsafe_safe", label: "Unsafe / safe", min: -3, max: 3, step: 1 },
  { key: "safety_timid_confident", label: "Timid / confident", min: -3, max: 3, step: 1 },
  { key: "acceptance_useful", label: "Visualizations are useful", min: 1, max: 7, step: 1 },
  { key: "acceptance_satisfying", label: "Visualizations are satisfying", min: 1, max: 7, step: 1 },
  { key: "aesthetics", label: "Visually appealing", min: 1, max: 7, step: 1 },
];

const SCALE_BY_KEY = new Map(FORM_SCALES.map((scale) => [scale.key, scale]));

export class RatingForm {
  private values = new Map<string, number>();

  /** Clamp to the item's scale and record it; returns the stored value. */
  setValue(key: string, value: number): number {
    const scale = SCALE_BY_KEY.get(key);
    if (!scale) throw new Error(`unknown rating item: ${key}`);
    if (!Number.isFinite(value)) throw new Error(`non-finite rating for ${key}`);
    const clamped = Math.min(scale.max, Math.max(scale.min, value));
    this.values.set(key, clamped);
    return clamped;
  }

  getValue(key: string): number | undefined {
    return this.values.get(key);
  }

  /** Items still unanswered; submission stays blocked until empty. */
  missingItems(): string[] {
    return FORM_SCALES.filter((s) => !this.values.has(s.key)).map((s) => s.key);
  }

  isComplete(): boolean {
    return this.missingItems().length === 0;
  }

  reset(): void {
    this.values.clear();
  }

  /** Assemble the server payload; every value is inside its scale bounds. */
  toPayload(): RatingsPayload {
    const missing = this.missingItems();
    if (missing.length > 0) {
      throw new Error(`form incomplete: ${missing.join(", ")}`);
    }
    const v = (key: string) => this.values.get(key)!;
    return {
      trust: v("trust"),
      understanding: v("understanding"),
      mental_demand: v("mental_demand"),
      perceived_safety: [
        v("safety_anxious_relaxed"),
        v("safety_agitated_calm"),
        v("safety_unsafe_safe"),
        v("safety_timid_confident"),
      ],
      acceptance_useful: v("acceptance_useful"),
      acceptance_satisfying: v("acceptance_satisfying"),
      aesthetics: v("aesthetics"),
    };
  }
}
