/** Shared test plumbing: recorded service payloads and a fetch
 * interceptor that serves them while logging every request the
 * workbench makes.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export interface Recorded {
  status: number;
  body: unknown;
}

export interface Fixtures {
  overrides_that_flip: Record<string, unknown>;
  payloads: Record<string, Recorded>;
}

export const fixtures: Fixtures = JSON.parse(
  readFileSync(join(here, "fixtures", "payloads.json"), "utf-8"),
);

export function recorded(name: string): Recorded {
  const doc = fixtures.payloads[name];
  if (!doc) throw new Error(`no recorded payload ${name}`);
  return doc;
}

export function resultOf<T>(name: string): T {
  return (recorded(name).body as { result: T }).result;
}

export interface LoggedRequest {
  method: string;
  url: string;
  body?: unknown;
}

export interface Route {
  method: string;
  url: string;
  respond: Recorded | ((req: LoggedRequest) => Recorded);
}

/** fetch double: serves routes in order of declaration, records calls. */
export function makeFetch(routes: Route[]): { fetchFn: FetchLike; log: LoggedRequest[] } {
  const log: LoggedRequest[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const request: LoggedRequest = { method, url };
    if (init?.body) request.body = JSON.parse(init.body as string);
    log.push(request);
    const route = routes.find((r) => r.method === method && r.url === url);
    if (!route) throw new Error(`unexpected request: ${method} ${url}`);
    const doc = typeof route.respond === "function" ? route.respond(request) : route.respond;
    return new Response(JSON.stringify(doc.body), {
      status: doc.status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, log };
}

/** All numbers present anywhere in a JSON document. */
export function numbersIn(doc: unknown): Set<number> {
  const out = new Set<number>();
  const walk = (v: unknown): void => {
    if (typeof v === "number") out.add(v);
    else if (Array.isArray(v)) v.forEach(walk);
    else if (v && typeof v === "object") Object.values(v).forEach(walk);
  };
  walk(doc);
  return out;
}
