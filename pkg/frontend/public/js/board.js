/** Pure view-model derivations: everything rendered comes straight from
 * the last server state, no client-side game logic. */
export function parseDims(grid) {
    const m = /^(\d+)x(\d+)$/.exec(grid);
    if (!m)
        throw new Error(`bad grid ${grid}`);
    const i = Number(m[1]);
    const j = Number(m[2]);
    // the long side runs along x, matching the server's coordinates
    return { cols: Math.max(i, j), rows: Math.min(i, j) };
}
function key(c) {
    return `${c[0]},${c[1]}`;
}
export function boardModel(s) {
    const { cols, rows } = parseDims(s.grid);
    const counts = new Map();
    for (const [x, y, n] of s.config)
        counts.set(`${x},${y}`, n);
    const visited = new Set(s.visited.map(key));
    const cells = [];
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
    const robots = s.robots.map((at, robot) => {
        const p = s.pending[robot] ?? null;
        return {
            robot,
            at,
            pendingAge: p === null ? null : p.age,
            targets: p === null ? [] : p.targets,
        };
    });
    const perRobot = new Map();
    const bulk = [];
    for (const a of s.enabled_actions) {
        if (a.type === "activate") {
            bulk.push(a);
            continue;
        }
        const group = perRobot.get(a.robot);
        if (group)
            group.push(a);
        else
            perRobot.set(a.robot, [a]);
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
export function actionLabel(a, s) {
    if (a.type === "look")
        return `Look r${a.robot}`;
    if (a.type === "activate")
        return `Activate {${a.robots.join(",")}} picks [${a.picks.join(",")}]`;
    const p = s.pending[a.robot];
    // tie-break indices follow row-major order on the staged targets
    const ordered = p ? [...p.targets].sort((u, v) => u[1] - v[1] || u[0] - v[0]) : [];
    const target = ordered[a.pick];
    const to = target ? ` -> ${target[0]},${target[1]}` : "";
    return `Move r${a.robot}#${a.pick}${to}`;
}
