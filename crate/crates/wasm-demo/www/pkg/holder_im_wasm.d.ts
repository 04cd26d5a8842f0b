/* tslint:disable */
/* eslint-disable */

/**
 * A simulated dataset, its intervals, and the envelope on a dense grid.
 */
export class CurveDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly grid: Float64Array;
    readonly gridLower: Float64Array;
    readonly gridUpper: Float64Array;
    readonly lower: Float64Array;
    readonly t: Float64Array;
    readonly truth: Float64Array;
    readonly upper: Float64Array;
    readonly y: Float64Array;
}

/**
 * Optimal weights and the widths they compete against.
 */
export class WeightFit {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly condAll: number;
    readonly condNearest: number;
    readonly marginal: number;
    readonly weights: Float64Array;
    readonly width: number;
}

/**
 * Widths of the three two-point constructions as functions of `B`.
 */
export class WidthCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bounds: Float64Array;
    readonly conservative: Float64Array;
    readonly lambda: Float64Array;
    readonly marginal: Float64Array;
    readonly mixture: Float64Array;
}

export function fitWeights(bounds: Float64Array, alpha: number): WeightFit;

export function simulateCurve(n: number, sigma: number, alpha: number, seed: bigint, grid_steps: number): CurveDemo;

export function widthCurve(alpha: number, b_max: number, steps: number): WidthCurve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curvedemo_free: (a: number, b: number) => void;
    readonly __wbg_weightfit_free: (a: number, b: number) => void;
    readonly __wbg_widthcurve_free: (a: number, b: number) => void;
    readonly curvedemo_grid: (a: number) => [number, number];
    readonly curvedemo_gridLower: (a: number) => [number, number];
    readonly curvedemo_gridUpper: (a: number) => [number, number];
    readonly curvedemo_lower: (a: number) => [number, number];
    readonly curvedemo_t: (a: number) => [number, number];
    readonly curvedemo_truth: (a: number) => [number, number];
    readonly curvedemo_upper: (a: number) => [number, number];
    readonly curvedemo_y: (a: number) => [number, number];
    readonly fitWeights: (a: number, b: number, c: number) => [number, number, number];
    readonly simulateCurve: (a: number, b: number, c: number, d: bigint, e: number) => [number, number, number];
    readonly weightfit_condAll: (a: number) => number;
    readonly weightfit_condNearest: (a: number) => number;
    readonly weightfit_marginal: (a: number) => number;
    readonly weightfit_weights: (a: number) => [number, number];
    readonly weightfit_width: (a: number) => number;
    readonly widthCurve: (a: number, b: number, c: number) => [number, number, number];
    readonly widthcurve_bounds: (a: number) => [number, number];
    readonly widthcurve_conservative: (a: number) => [number, number];
    readonly widthcurve_lambda: (a: number) => [number, number];
    readonly widthcurve_marginal: (a: number) => [number, number];
    readonly widthcurve_mixture: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
