/** Browser entry: wires the session API to the DOM. Rendering is a pure
 * function of the last server response; every click round-trips. */
import { ApiError, SessionClient } from "./api.js";
import { actionLabel, boardModel } from "./board.js";
let current = null;
function el(tag, cls, text) {
    const node = document.createElement(tag);
    if (cls)
        node.className = cls;
    if (text !== undefined)
        node.textContent = text;
    return node;
}
function renderBoard(s) {
    const m = boardModel(s);
    const grid = el("div", "board");
    grid.style.gridTemplateColumns = `repeat(${m.cols}, 3rem)`;
    for (let y = m.rows - 1; y >= 0; y--) {
        for (let x = 0; x < m.cols; x++) {
            const cell = m.cells[y * m.cols + x];
            if (!cell)
                continue;
            const node = el("div", `cell ${cell.kind}${cell.visited ? " visited" : ""}`);
            node.title = `(${x},${y})`;
            if (cell.kind === "single")
                node.textContent = "●";
            if (cell.kind === "tower")
                node.textContent = s.mode === "weak" ? "⊤" : `${cell.count}`;
            grid.appendChild(node);
        }
    }
    return grid;
}
function renderRobots(s) {
    const m = boardModel(s);
    const list = el("ul", "robots");
    for (const r of m.robots) {
        const tag = r.pendingAge === null
            ? "idle"
            : `staged -> ${r.targets.map((t) => `${t[0]},${t[1]}`).join(" | ")} (age ${r.pendingAge})`;
        list.appendChild(el("li", "robot", `r${r.robot} @ ${r.at[0]},${r.at[1]} — ${tag}`));
    }
    return list;
}
function renderPalette(s) {
    const m = boardModel(s);
    const pane = el("div", "palette");
    for (const group of m.palette) {
        const box = el("fieldset");
        box.appendChild(el("legend", undefined, `robot ${group.robot}`));
        for (const a of group.actions)
            box.appendChild(actionButton(a, s));
        pane.appendChild(box);
    }
    if (m.bulk.length > 0) {
        const box = el("fieldset");
        box.appendChild(el("legend", undefined, "activations"));
        for (const a of m.bulk)
            box.appendChild(actionButton(a, s));
        pane.appendChild(box);
    }
    return pane;
}
function actionButton(a, s) {
    const b = el("button", "action", actionLabel(a, s));
    b.addEventListener("click", () => void act(a));
    return b;
}
async function act(a) {
    if (!current)
        return;
    try {
        const next = await current.client.act(a);
        current.state = next;
        current.log.push(a);
        render();
    }
    catch (e) {
        if (e instanceof ApiError && e.status === 409) {
            // someone raced us or the palette predates the last response
            setStatus("stale palette — refreshed");
            current.state = await current.client.state();
            render();
        }
        else {
            setStatus(String(e));
        }
    }
}
async function undo() {
    if (!current)
        return;
    try {
        current.state = await current.client.undo();
        current.log.pop();
        render();
    }
    catch (e) {
        setStatus(e instanceof ApiError ? e.message : String(e));
    }
}
function setStatus(msg) {
    const node = document.getElementById("status");
    if (node)
        node.textContent = msg;
}
function render() {
    if (!current)
        return;
    const s = current.state;
    const m = boardModel(s);
    const root = document.getElementById("console");
    if (!root)
        return;
    root.replaceChildren();
    const banner = el("div", `banner${m.quiescent ? " terminal" : ""}`, m.banner);
    root.appendChild(banner);
    root.appendChild(el("div", "meta", `step ${s.step} · ${s.model}/${s.mode} · ${s.grid}`));
    root.appendChild(renderBoard(s));
    root.appendChild(renderRobots(s));
    root.appendChild(renderPalette(s));
    const controls = el("div", "controls");
    const undoBtn = el("button", undefined, "undo");
    undoBtn.disabled = current.log.length === 0;
    undoBtn.addEventListener("click", () => void undo());
    controls.appendChild(undoBtn);
    const dump = el("button", undefined, "copy action log");
    dump.addEventListener("click", () => {
        const text = current.log.map((a) => JSON.stringify(a)).join("\n");
        void navigator.clipboard.writeText(text);
        setStatus(`${current.log.length} actions copied — replay with run --adversary script:FILE`);
    });
    controls.appendChild(dump);
    root.appendChild(controls);
    setStatus("");
}
async function start(form) {
    const data = new FormData(form);
    const params = {
        grid: String(data.get("grid") ?? "2x3"),
        k: Number(data.get("k") ?? 3),
        model: String(data.get("model") ?? "corda"),
        protocol: String(data.get("protocol") ?? "") || undefined,
        initial: String(data.get("initial") ?? "") || undefined,
        seed: Number(data.get("seed") ?? 0),
    };
    try {
        const client = await SessionClient.create("", params);
        current = { client, state: await client.state(), log: [] };
        render();
    }
    catch (e) {
        setStatus(e instanceof ApiError ? `${e.status}: ${e.message}` : String(e));
    }
}
export function main() {
    const form = document.getElementById("setup");
    if (!form)
        return;
    form.addEventListener("submit", (ev) => {
        ev.preventDefault();
        void start(form);
    });
}
main();
