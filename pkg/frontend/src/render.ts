// DOM renderers for the four challenge kinds. Each renderer fills a
// container from the server payload alone and reports the user's pick
// through a callback; cells carry data-* attributes so tests and practice
// mode can address them. Click-to-cell mapping is exact (one element per
// cell), matching the verifier's boundary-inclusive reading by
// construction.

import type {
  Challenge,
  ChcChallenge,
  CopChallenge,
  PasChallenge,
  S3pasChallenge,
} from "./types.js";
import { detectScheme } from "./types.js";

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderS3pas(
  container: HTMLElement,
  challenge: S3pasChallenge,
  onPick: (char: string) => void,
): void {
  container.textContent = "";
  const grid = el("div", "grid s3pas-grid");
  grid.style.display = "grid";
  grid.style.gridTemplateColumns = `repeat(${challenge.grid[0].length}, 2.2em)`;
  challenge.grid.forEach((row, y) => {
    [...row].forEach((ch, x) => {
      const cell = el("button", "cell", ch);
      cell.dataset.char = ch;
      cell.dataset.x = String(x);
      cell.dataset.y = String(y);
      cell.addEventListener("click", () => onPick(ch));
      grid.appendChild(cell);
    });
  });
  container.appendChild(grid);
}

export function renderChc(
  container: HTMLElement,
  challenge: ChcChallenge,
  onPick: (iconId: number) => void,
): void {
  container.textContent = "";
  const cols = 1 + Math.max(...challenge.icons.map((i) => i.x));
  const rows = 1 + Math.max(...challenge.icons.map((i) => i.y));
  const grid = el("div", "grid chc-grid");
  grid.style.display = "grid";
  grid.style.gridTemplateColumns = `repeat(${cols}, 2.6em)`;
  const byCell = new Map(challenge.icons.map((i) => [`${i.x},${i.y}`, i]));
  for (let y = 0; y < rows; y++) {
    for (let x = 0; x < cols; x++) {
      const icon = byCell.get(`${x},${y}`);
      if (icon === undefined) {
        grid.appendChild(el("span", "cell empty"));
        continue;
      }
      const cell = el("button", "cell icon", String(icon.id));
      cell.dataset.icon = String(icon.id);
      cell.dataset.x = String(icon.x);
      cell.dataset.y = String(icon.y);
      cell.addEventListener("click", () => onPick(icon.id));
      grid.appendChild(cell);
    }
  }
  container.appendChild(grid);
}

export function renderPas(
  container: HTMLElement,
  challenge: PasChallenge,
  onPick: (element: string) => void,
): void {
  container.textContent = "";
  for (const [name, blocks] of [["table1", challenge.table1], ["table2", challenge.table2]] as const) {
    const wrap = el("div", `pas-table ${name}`);
    wrap.appendChild(el("h4", undefined, name === "table1" ? "Table 1" : "Table 2"));
    const grid = el("div", "grid pas-grid");
    grid.style.display = "grid";
    grid.style.gridTemplateColumns = "repeat(5, 9em)";
    for (const block of blocks) {
      const cell = el("div", "cell block");
      cell.dataset.table = name;
      cell.dataset.block = `${block.block[0]}${block.block[1]}`;
      cell.appendChild(el("strong", undefined, `(${block.block[0]},${block.block[1]})`));
      cell.appendChild(el("span", "letters", block.letters));
      grid.appendChild(cell);
    }
    wrap.appendChild(grid);
    container.appendChild(wrap);
  }
  const choices = el("div", "pas-choices");
  for (const option of challenge.response_options) {
    const button = el("button", "choice", option);
    button.dataset.response = option;
    button.addEventListener("click", () => onPick(option));
    choices.appendChild(button);
  }
  container.appendChild(choices);
}

export function renderCop(
  container: HTMLElement,
  challenge: CopChallenge,
  onPick: (digit: number) => void,
): void {
  container.textContent = "";
  const cols = 1 + Math.max(...challenge.cells.map((c) => c.x));
  const grid = el("div", "grid cop-grid");
  grid.style.display = "grid";
  grid.style.gridTemplateColumns = `repeat(${cols}, 3em)`;
  const ordered = [...challenge.cells].sort((a, b) => a.y - b.y || a.x - b.x);
  for (const cell of ordered) {
    const node = el("button", "cell cop-cell");
    node.appendChild(el("span", "char", cell.char));
    node.appendChild(el("span", "digit", String(cell.digit)));
    node.dataset.char = cell.char;
    node.dataset.digit = String(cell.digit);
    node.dataset.x = String(cell.x);
    node.dataset.y = String(cell.y);
    node.addEventListener("click", () => onPick(cell.digit));
    grid.appendChild(node);
  }
  container.appendChild(grid);
}

export function renderChallenge(
  container: HTMLElement,
  challenge: Challenge,
  onPick: (response: string | number) => void,
): void {
  switch (detectScheme(challenge)) {
    case "s3pas":
      renderS3pas(container, challenge as S3pasChallenge, onPick);
      break;
    case "chc":
      renderChc(container, challenge as ChcChallenge, onPick);
      break;
    case "pas":
      renderPas(container, challenge as PasChallenge, onPick);
      break;
    case "cop":
      renderCop(container, challenge as CopChallenge, onPick);
      break;
  }
}
