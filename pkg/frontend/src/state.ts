/** Shared selection state for the four coordinated views.
 *
 * All cross-view linking flows through one reducer: every interaction is an
 * Action, the next state is a pure function of (state, action, bundle), and
 * views re-render from the store. Replaying an interaction log therefore
 * reproduces the exact same view state.
 */

import type { BundleJson, WordJson } from "./types.js";

export type PhraseKind = "NP" | "VP" | "PP" | "SVO";
export type GestureType = "closed" | "open" | "others";

export interface SelectionState {
  videoId: string;
  timeCursor: number;
  brushedRange: [number, number] | null;
  selectedWords: number[];
  selectedPhrases: number[];
  selectedSegments: number[];
  activeKinds: PhraseKind[];
  activeTypes: GestureType[];
  searchQuery: string;
  searchMatches: number[];
  variationThreshold: number;
  changeThreshold: number;
  phraseTimeRange: [number, number] | null;
  minOccurrence: number;
  multiLineMode: boolean;
  playing: boolean;
}

export type Action =
  | { type: "brush-timeline"; range: [number, number] | null }
  | { type: "brush-transcript"; wordIndices: number[] }
  | { type: "click-word"; wordIndex: number }
  | { type: "click-phrase"; phraseId: number }
  | { type: "click-segment"; segmentId: number }
  | { type: "seek"; time: number }
  | { type: "set-thresholds"; variation: number; change: number }
  | { type: "set-search"; query: string; matches: number[] }
  | { type: "toggle-kind"; kind: PhraseKind }
  | { type: "toggle-type"; gestureType: GestureType }
  | {
      type: "set-phrase-filters";
      timeRange: [number, number] | null;
      minOccurrence: number;
    }
  | { type: "toggle-multi-line" }
  | { type: "set-playing"; playing: boolean };

export function initialState(bundle: BundleJson): SelectionState {
  const thresholds = bundle.effective_thresholds ?? {
    variation_threshold: bundle.config.variation_threshold,
    change_threshold: bundle.config.change_threshold,
  };
  return {
    videoId: bundle.video.id,
    timeCursor: 0,
    brushedRange: null,
    selectedWords: [],
    selectedPhrases: [],
    selectedSegments: [],
    activeKinds: ["NP", "VP", "PP", "SVO"],
    activeTypes: ["closed", "open", "others"],
    searchQuery: "",
    searchMatches: [],
    variationThreshold: thresholds.variation_threshold,
    changeThreshold: thresholds.change_threshold,
    phraseTimeRange: null,
    minOccurrence: 1,
    multiLineMode: false,
    playing: false,
  };
}

export function wordsInRange(
  words: WordJson[],
  range: [number, number],
): number[] {
  const [lo, hi] = range;
  return words.filter((w) => w.start < hi && w.end > lo).map((w) => w.index);
}

function linkedSegments(bundle: BundleJson, phraseId: number): number[] {
  return bundle.relation.links
    .filter(([pid]) => pid === phraseId)
    .map(([, sid]) => sid);
}

function linkedPhrases(bundle: BundleJson, segmentId: number): number[] {
  return bundle.relation.links
    .filter(([, sid]) => sid === segmentId)
    .map(([pid]) => pid);
}

function wordSpanTimes(
  bundle: BundleJson,
  wordRange: [number, number],
): [number, number] {
  const start = bundle.words[wordRange[0]]?.start ?? 0;
  const end = bundle.words[wordRange[1]]?.end ?? start;
  return [start, end];
}

function toggle<T>(items: T[], item: T): T[] {
  return items.includes(item)
    ? items.filter((x) => x !== item)
    : [...items, item];
}

function span(indices: number[]): [number, number] {
  return [Math.min(...indices), Math.max(...indices)];
}

export function reduce(
  state: SelectionState,
  action: Action,
  bundle: BundleJson,
): SelectionState {
  switch (action.type) {
    case "brush-timeline": {
      if (action.range === null) {
        return { ...state, brushedRange: null, selectedWords: [] };
      }
      return {
        ...state,
        brushedRange: action.range,
        selectedWords: wordsInRange(bundle.words, action.range),
      };
    }
    case "brush-transcript": {
      if (!action.wordIndices.length) {
        return { ...state, brushedRange: null, selectedWords: [] };
      }
      const [lo, hi] = span(action.wordIndices);
      return {
        ...state,
        selectedWords: [...action.wordIndices].sort((a, b) => a - b),
        brushedRange: [bundle.words[lo].start, bundle.words[hi].end],
      };
    }
    case "click-word": {
      const w = bundle.words[action.wordIndex];
      return {
        ...state,
        timeCursor: w.start,
        selectedWords: [action.wordIndex],
        brushedRange: [w.start, w.end],
      };
    }
    case "click-phrase": {
      const phrase = bundle.phrases.find((p) => p.id === action.phraseId);
      if (!phrase) return state;
      const words: number[] = [];
      for (let i = phrase.word_range[0]; i <= phrase.word_range[1]; i++) words.push(i);
      return {
        ...state,
        timeCursor: phrase.start,
        selectedPhrases: [phrase.id],
        selectedSegments: linkedSegments(bundle, phrase.id),
        selectedWords: words,
        brushedRange: [phrase.start, phrase.end],
      };
    }
    case "click-segment": {
      const segment = bundle.segments.find((s) => s.id === action.segmentId);
      if (!segment) return state;
      const [start, end] = wordSpanTimes(bundle, segment.word_range);
      const words: number[] = [];
      for (let i = segment.word_range[0]; i <= segment.word_range[1]; i++) {
        words.push(i);
      }
      return {
        ...state,
        timeCursor: start,
        selectedSegments: [segment.id],
        selectedPhrases: linkedPhrases(bundle, segment.id),
        selectedWords: words,
        brushedRange: [start, end],
      };
    }
    case "seek":
      return { ...state, timeCursor: action.time };
    case "set-thresholds":
      return {
        ...state,
        variationThreshold: action.variation,
        changeThreshold: action.change,
      };
    case "set-search":
      return { ...state, searchQuery: action.query, searchMatches: action.matches };
    case "toggle-kind":
      return { ...state, activeKinds: toggle(state.activeKinds, action.kind) };
    case "toggle-type":
      return { ...state, activeTypes: toggle(state.activeTypes, action.gestureType) };
    case "set-phrase-filters":
      return {
        ...state,
        phraseTimeRange: action.timeRange,
        minOccurrence: action.minOccurrence,
      };
    case "toggle-multi-line":
      return { ...state, multiLineMode: !state.multiLineMode };
    case "set-playing":
      return { ...state, playing: action.playing };
  }
}

/** Case-insensitive exact token match, mirroring the service behavior. */
export function searchKeyword(words: WordJson[], query: string): number[] {
  const normalize = (s: string) =>
    s.toLowerCase().replace(/^[^\p{L}\p{N}]+|[^\p{L}\p{N}]+$/gu, "");
  const needle = normalize(query);
  if (!needle) return [];
  return words.filter((w) => normalize(w.text) === needle).map((w) => w.index);
}

export type Listener = (state: SelectionState) => void;

export class Store {
  private state: SelectionState;
  private listeners: Listener[] = [];
  readonly log: Action[] = [];

  constructor(readonly bundle: BundleJson, state?: SelectionState) {
    this.state = state ?? initialState(bundle);
  }

  get current(): SelectionState {
    return this.state;
  }

  dispatch(action: Action): void {
    this.log.push(action);
    this.state = reduce(this.state, action, this.bundle);
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  /** Fold a recorded interaction log into the state it produces. */
  static replay(bundle: BundleJson, log: Action[]): SelectionState {
    return log.reduce(
      (state, action) => reduce(state, action, bundle),
      initialState(bundle),
    );
  }
}
