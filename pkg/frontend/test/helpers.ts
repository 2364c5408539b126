import { readFileSync, existsSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { parseBundle } from "../src/bundle.js";
import type { Model } from "../src/types.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export interface FixtureCase {
  name: string;
  canvas: number;
  minSegmentPx: number;
  scale: "log" | "linear";
  bundle: unknown;
  interEdgesById: [number, number, number][];
  dump: { width: number; height: number; rgbBase64: string };
}

export function fixturePath(name: string): string {
  return join(FIXTURES, name);
}

export function hasFixture(name: string): boolean {
  return existsSync(fixturePath(name));
}

export function loadJson<T>(name: string): T {
  return JSON.parse(readFileSync(fixturePath(name), "utf-8")) as T;
}

export function loadCase(name: string): { fixture: FixtureCase; model: Model } {
  const fixture = loadJson<FixtureCase>(`${name}.json`);
  return { fixture, model: parseBundle(fixture.bundle) };
}

export function dumpBytes(fixture: FixtureCase): Uint8Array {
  return new Uint8Array(Buffer.from(fixture.dump.rgbBase64, "base64"));
}

export const CASE_NAMES = ["bridge", "social", "roadish"] as const;
