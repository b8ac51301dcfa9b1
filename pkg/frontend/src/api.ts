import type { ApiClient, ApplicantBody, Assessment, ConfigDoc, SweepPoint, WhatIfRequest } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    detail: string,
  ) {
    super(detail);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, body.code ?? "unknown", body.detail ?? response.statusText);
  }
  return body as T;
}

export function createApiClient(base = ""): ApiClient {
  return {
    getConfig: () => request<ConfigDoc>(`${base}/api/v1/config`),
    assess: (body: ApplicantBody) =>
      request<Assessment>(`${base}/api/v1/assess`, {
        method: "POST",
        body: JSON.stringify(body),
      }),
    whatIf: (body: WhatIfRequest) =>
      request<SweepPoint[]>(`${base}/api/v1/whatif`, {
        method: "POST",
        body: JSON.stringify(body),
      }),
  };
}
