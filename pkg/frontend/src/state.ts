/** View state: the current window plus a lossless zoom history. */

import type { MatrixWindow, Model, ScaleMode } from "./types.js";
import { clampWindow, fullWindow } from "./view.js";

export interface ViewState {
  window: MatrixWindow;
  history: MatrixWindow[];
  scale: ScaleMode;
}

export function createState(model: Model, scale: ScaleMode = "log"): ViewState {
  return { window: fullWindow(model), history: [], scale };
}

/** Push the current window and zoom to a new one (snapped and clamped). */
export function zoomTo(state: ViewState, model: Model, win: MatrixWindow): ViewState {
  const next = clampWindow(model, win);
  return {
    window: next,
    history: [...state.history, state.window],
    scale: state.scale,
  };
}

/** Pop the history; restores the prior window exactly. */
export function zoomOut(state: ViewState): ViewState {
  if (state.history.length === 0) return state;
  const history = state.history.slice(0, -1);
  return { window: state.history[state.history.length - 1], history, scale: state.scale };
}

export function resetZoom(state: ViewState, model: Model): ViewState {
  return { window: fullWindow(model), history: [], scale: state.scale };
}

export function setScale(state: ViewState, scale: ScaleMode): ViewState {
  return { ...state, scale };
}
