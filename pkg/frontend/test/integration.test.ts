/**
 * Live round-trip against a running service; set INFOBELL_API_URL to enable
 * (e.g. `infobell serve --port 8000` then INFOBELL_API_URL=http://127.0.0.1:8000).
 */
import { describe, expect, it } from "vitest";

import { ConsoleApi } from "../src/api.js";

const base = process.env.INFOBELL_API_URL;

describe.skipIf(!base)("live service round-trip", () => {
  it("creates a session, enters outcomes, and watches the verdict", async () => {
    const api = new ConsoleApi(base!);
    let summary = await api.createSession({
      n: 2, p0_h0: 0.012, p0_h1: 0.85, alpha: 0.001, gamma: 0.99,
    });
    expect(summary.plan.n_req).toBe(6);
    expect(summary.verdict).toBe("InProgress");

    for (let e = 1; e <= 2; e++) {
      for (let i = 0; i < 2; i++) {
        summary = await api.postOutcome(summary.session_id, e, {
          a: i % 2, a_prime: 1, b: 1, b_prime: (i + 1) % 2,
          sel_a: "a", sel_b: "b_prime",
        });
      }
    }
    expect(summary.experiments_complete).toBe(2);
    expect(summary.deficits).toHaveLength(2);

    const resp = await fetch(api.exportUrl(summary.session_id));
    const csv = await resp.text();
    expect(csv.split("\n")[0].trim()).toBe(
      "experiment,outcome,a,a_prime,b,b_prime,sel_a,sel_b",
    );
    expect(csv.trim().split("\n")).toHaveLength(5);
  });
});
