/** Bundle parsing and validation. */

import type { Bundle, Cell, Model } from "./types.js";

export class BundleError extends Error {}

function fail(msg: string): never {
  throw new BundleError(`invalid bundle: ${msg}`);
}

function isRecord(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function checkInt(x: unknown, what: string): number {
  if (typeof x !== "number" || !Number.isInteger(x)) fail(`${what} must be an integer`);
  return x;
}

/**
 * Validate a parsed JSON document against the export schema and build the
 * in-memory model: the half matrix is mirrored into a symmetric cell set
 * and instances are checked to line up with their segments.
 */
export function parseBundle(data: unknown): Model {
  if (!isRecord(data)) fail("document is not an object");
  for (const key of ["meta", "segments", "instances", "cells", "color_domain"]) {
    if (!(key in data)) fail(`missing field ${key}`);
  }
  const bundle = data as unknown as Bundle;
  if (!Array.isArray(bundle.segments) || !Array.isArray(bundle.instances)
      || !Array.isArray(bundle.cells)) {
    fail("segments, instances and cells must be arrays");
  }
  const matrixSize = bundle.instances.length;
  let expectedOffset = 0;
  for (const seg of bundle.segments) {
    if (!isRecord(seg)) fail("segment is not an object");
    checkInt(seg.count, "segment count");
    if (checkInt(seg.offset, "segment offset") !== expectedOffset) {
      fail(`segment ${seg.type} offset ${seg.offset}, expected ${expectedOffset}`);
    }
    expectedOffset += seg.count;
  }
  if (expectedOffset !== matrixSize) {
    fail(`segments cover ${expectedOffset} positions but there are ${matrixSize} instances`);
  }
  bundle.instances.forEach((inst, pos) => {
    if (!isRecord(inst)) fail(`instance at position ${pos} is not an object`);
    checkInt(inst.id, "instance id");
    checkInt(inst.n, "instance n");
    checkInt(inst.ext, "instance ext");
    if (typeof inst.type !== "string") fail("instance type must be a string");
  });
  const cells: Cell[] = [];
  for (const raw of bundle.cells) {
    if (!Array.isArray(raw) || raw.length !== 4) fail("cell rows must be [row, col, d, sizeSum]");
    const [row, col, d, sizeSum] = raw.map((x) => checkInt(x, "cell entry"));
    if (row < 0 || col >= matrixSize) fail(`cell (${row}, ${col}) outside the matrix`);
    if (row >= col) fail(`cell (${row}, ${col}) is not in the upper half`);
    if (d < 1) fail("cell edge count must be >= 1");
    cells.push({ row, col, d, sizeSum });
    cells.push({ row: col, col: row, d, sizeSum });
  }
  const domain = bundle.color_domain;
  if (!Array.isArray(domain) || domain.length !== 2) fail("color_domain must be [min, max]");
  return {
    meta: bundle.meta,
    segments: bundle.segments,
    instances: bundle.instances,
    cells,
    colorDomain: [checkInt(domain[0], "color domain"), checkInt(domain[1], "color domain")],
    matrixSize,
  };
}

/** Parse bundle text (e.g. a fetched file), wrapping JSON errors. */
export function parseBundleText(text: string): Model {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (exc) {
    fail(`not valid JSON (${(exc as Error).message})`);
  }
  return parseBundle(doc);
}
