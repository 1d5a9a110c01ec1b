/** Typed client for the session HTTP API. Every response is validated
 * before it reaches the board, so a drifting server fails loudly. */

import { z } from "zod";

const coord = z.tuple([z.number().int(), z.number().int()]);

export const actionSchema = z.discriminatedUnion("type", [
  z.object({ type: z.literal("look"), robot: z.number().int() }),
  z.object({
    type: z.literal("move"),
    robot: z.number().int(),
    pick: z.number().int(),
  }),
  z.object({
    type: z.literal("activate"),
    robots: z.array(z.number().int()),
    picks: z.array(z.number().int()),
  }),
]);

export const stateSchema = z.object({
  id: z.string(),
  grid: z.string(),
  model: z.enum(["atom", "corda"]),
  mode: z.enum(["weak", "strong"]),
  step: z.number().int(),
  robots: z.array(coord),
  config: z.array(z.tuple([z.number().int(), z.number().int(), z.number().int()])),
  pending: z.array(
    z
      .object({
        targets: z.array(coord),
        snapshot_step: z.number().int(),
        age: z.number().int(),
      })
      .nullable(),
  ),
  visited: z.array(coord),
  enabled_actions: z.array(actionSchema),
  quiescent: z.boolean(),
  explored: z.boolean(),
});

export type Coord = z.infer<typeof coord>;
export type Action = z.infer<typeof actionSchema>;
export type SessionState = z.infer<typeof stateSchema>;

export interface SessionParams {
  grid: string;
  k: number;
  protocol?: string;
  model?: "atom" | "corda";
  mode?: "weak" | "strong";
  initial?: string;
  seed?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function expect(res: Response): Promise<unknown> {
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = (await res.json()) as { detail?: unknown };
      if (body.detail !== undefined) detail = String(body.detail);
    } catch {
      /* keep statusText */
    }
    throw new ApiError(res.status, detail);
  }
  return res.json();
}

export class SessionClient {
  constructor(
    readonly base: string,
    readonly id: string,
  ) {}

  static async create(base: string, params: SessionParams): Promise<SessionClient> {
    const res = await fetch(`${base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(params),
    });
    const body = z
      .object({ id: z.string(), state: stateSchema })
      .parse(await expect(res));
    return new SessionClient(base, body.id);
  }

  async state(): Promise<SessionState> {
    const res = await fetch(`${this.base}/sessions/${this.id}`);
    return stateSchema.parse(await expect(res));
  }

  async act(action: Action): Promise<SessionState> {
    const res = await fetch(`${this.base}/sessions/${this.id}/actions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ action }),
    });
    return stateSchema.parse(await expect(res));
  }

  async undo(): Promise<SessionState> {
    const res = await fetch(`${this.base}/sessions/${this.id}/undo`, {
      method: "POST",
    });
    return stateSchema.parse(await expect(res));
  }

  async trace(): Promise<string> {
    const res = await fetch(`${this.base}/sessions/${this.id}/trace`);
    if (!res.ok) throw new ApiError(res.status, res.statusText);
    return res.text();
  }

  async close(): Promise<void> {
    await expect(await fetch(`${this.base}/sessions/${this.id}`, { method: "DELETE" }));
  }
}
