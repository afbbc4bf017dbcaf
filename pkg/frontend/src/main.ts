// Browser entry point: wire the store to the DOM.

import { NavClient } from "./api.js";
import { Store } from "./state.js";
import { renderView } from "./render.js";

const serviceUrl =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8752";

const store = new Store(new NavClient(serviceUrl));
const view = document.getElementById("view")!;
const form = document.getElementById("program-form") as HTMLFormElement;
const textarea = document.getElementById("program-text") as HTMLTextAreaElement;

store.subscribe((state) => {
  view.innerHTML = renderView(state);
});

form.addEventListener("submit", (event) => {
  event.preventDefault();
  void store.loadProgram(textarea.value);
});

view.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const literal = target.getAttribute("data-assume");
  if (literal) {
    const positive = !literal.startsWith("-");
    void store.toggleAssumption(positive ? literal : literal.slice(1), positive);
    return;
  }
  const undoSteps = target.getAttribute("data-undo-steps");
  if (undoSteps) {
    void store.undo(Number(undoSteps));
  }
});

view.addEventListener("change", (event) => {
  const target = event.target as HTMLInputElement;
  if (target.id === "depth-slider") {
    void store.setDepth(Number(target.value));
  } else if (target.id === "depth-full") {
    void store.setDepth(target.checked ? null : store.state.stats?.cycles ?? 0);
  }
});
