/**
 * Typed client for the session service. All numbers shown in the console
 * come from these responses; the client computes no entropies itself.
 */

export interface PlanInfo {
  p0_h0: number;
  p0_h1: number;
  alpha: number;
  gamma: number;
  n_req: number;
  k0: number;
}

export interface EstimatorVariant {
  scheme: string;
  selection_domain: string;
  eq2_denominator: string;
  delta: number;
}

export interface DeficitRow {
  experiment: number;
  deficit_bits: number;
  h_ab_hd: number;
}

export interface SessionSummary {
  session_id: string;
  n: number;
  plan: PlanInfo;
  estimator_variant: EstimatorVariant;
  experiments_complete: number;
  current_experiment: number;
  outcomes_entered: number;
  deficits: DeficitRow[];
  k_e: number;
  verdict: "InProgress" | "RetainH0" | "AcceptH1";
  early: boolean;
}

export interface OutcomePayload {
  a: number;
  a_prime: number;
  b: number;
  b_prime: number;
  sel_a: "a" | "a_prime";
  sel_b: "b" | "b_prime";
}

export interface SessionCreateRequest {
  n: number;
  p0_h0: number;
  p0_h1: number;
  alpha: number;
  gamma: number;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && body.detail) detail = JSON.stringify(body.detail);
    } catch {
      /* keep statusText */
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ConsoleApi {
  constructor(private baseUrl: string = "") {}

  async createSession(req: SessionCreateRequest): Promise<SessionSummary> {
    const resp = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(req),
    });
    return asJson<SessionSummary>(resp);
  }

  async postOutcome(
    sessionId: string,
    experiment: number,
    outcome: OutcomePayload,
  ): Promise<SessionSummary> {
    const resp = await fetch(
      `${this.baseUrl}/sessions/${sessionId}/experiments/${experiment}/outcomes`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(outcome),
      },
    );
    return asJson<SessionSummary>(resp);
  }

  async summary(sessionId: string): Promise<SessionSummary> {
    return asJson<SessionSummary>(
      await fetch(`${this.baseUrl}/sessions/${sessionId}/summary`),
    );
  }

  /** p0 under the alternative: positive fraction of the reference curve. */
  async violationFraction(): Promise<number> {
    const body = await asJson<{ violation_fraction: number }>(
      await fetch(
        `${this.baseUrl}/curve?theta_min=0&theta_max=100&step=0.01`,
      ),
    );
    return body.violation_fraction;
  }

  /** p0 under the null: positive rate of a reference campaign. */
  async nullRate(outcomes: number, experiments: number, seed: number): Promise<number> {
    const body = await asJson<{ n0: number; n_valid: number }>(
      await fetch(
        `${this.baseUrl}/simulate?case=random&outcomes=${outcomes}` +
          `&experiments=${experiments}&seed=${seed}`,
      ),
    );
    return body.n0 / body.n_valid;
  }

  exportUrl(sessionId: string): string {
    return `${this.baseUrl}/sessions/${sessionId}/export.csv`;
  }
}
