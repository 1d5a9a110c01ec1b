/** Pure view-model derivations: everything rendered comes straight from
 * the last server state, no client-side game logic. */

import type { Action, Coord, SessionState } from "./api.js";

export type CellKind = "free" | "single" | "tower";

export interface Cell {
  x: number;
  y: number;
  kind: CellKind;
  count: number;
  visited: boolean;
}

export interface RobotBadge {
  robot: number;
  at: Coord;
  /** null while idle; otherwise how many steps old the staged snapshot is */
  pendingAge: number | null;
  targets: Coord[];
}

export interface PaletteGroup {
  robot: number;
  actions: Action[];
}

export interface BoardModel {
  cols: number;
  rows: number;
  cells: Cell[];
  robots: RobotBadge[];
  palette: PaletteGroup[];
  bulk: Action[];
  step: number;
  quiescent: boolean;
  banner: string;
}

export function parseDims(grid: string): { cols: number; rows: number } {
  const m = /^(\d+)x(\d+)$/.exec(grid);
  if (!m) throw new Error(`bad grid ${grid}`);
  const i = Number(m[1]);
  const j = Number(m[2]);
  // the long side runs along x, matching the server's coordinates
  return { cols: Math.max(i, j), rows: Math.min(i, j) };
}

function key(c: Coord): string {
  return `${c[0]},${c[1]}`;
}

export function boardModel(s: SessionState): BoardModel {
  const { cols, rows } = parseDims(s.grid);
  const counts = new Map<string, number>();
  for (const [x, y, n] of s.config) counts.set(`${x},${y}`, n);
  const visited = new Set(s.visited.map(key));

  const cells: Cell[] = [];
  for (let y = 0; y < rows; y++) {
    for (let x = 0; x < cols; x++) {
      const count = counts.get(`${x},${y}`) ?? 0;
      cells.push({
        x,
        y,
        count,
        kind: count === 0 ? "free" : count === 1 ? "single" : "tower",
        visited: visited.has(`${x},${y}`),
      });
    }
  }

  const robots: RobotBadge[] = s.robots.map((at, robot) => {
    const p = s.pending[robot] ?? null;
    return {
      robot,
      at,
      pendingAge: p === null ? null : p.age,
      targets: p === null ? [] : p.targets,
    };
  });

  const perRobot = new Map<number, Action[]>();
  const bulk: Action[] = [];
  for (const a of s.enabled_actions) {
    if (a.type === "activate") {
      bulk.push(a);
      continue;
    }
    const group = perRobot.get(a.robot);
    if (group) group.push(a);
    else perRobot.set(a.robot, [a]);
  }
  const palette = [...perRobot.entries()]
    .sort(([a], [b]) => a - b)
    .map(([robot, actions]) => ({ robot, actions }));

  const seen = s.visited.length;
  const total = cols * rows;
  const banner = s.quiescent
    ? `terminal — explored ${seen}/${total}`
    : `explored ${seen}/${total}`;

  return { cols, rows, cells, robots, palette, bulk, step: s.step, quiescent: s.quiescent, banner };
}

export function actionLabel(a: Action, s: SessionState): string {
  if (a.type === "look") return `Look r${a.robot}`;
  if (a.type === "activate")
    return `Activate {${a.robots.join(",")}} picks [${a.picks.join(",")}]`;
  const p = s.pending[a.robot];
  // tie-break indices follow row-major order on the staged targets
  const ordered = p ? [...p.targets].sort((u, v) => u[1] - v[1] || u[0] - v[0]) : [];
  const target = ordered[a.pick];
  const to = target ? ` -> ${target[0]},${target[1]}` : "";
  return `Move r${a.robot}#${a.pick}${to}`;
}
