/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curvedemo_free: (a: number, b: number) => void;
export const __wbg_weightfit_free: (a: number, b: number) => void;
export const __wbg_widthcurve_free: (a: number, b: number) => void;
export const curvedemo_grid: (a: number) => [number, number];
export const curvedemo_gridLower: (a: number) => [number, number];
export const curvedemo_gridUpper: (a: number) => [number, number];
export const curvedemo_lower: (a: number) => [number, number];
export const curvedemo_t: (a: number) => [number, number];
export const curvedemo_truth: (a: number) => [number, number];
export const curvedemo_upper: (a: number) => [number, number];
export const curvedemo_y: (a: number) => [number, number];
export const fitWeights: (a: number, b: number, c: number) => [number, number, number];
export const simulateCurve: (a: number, b: number, c: number, d: bigint, e: number) => [number, number, number];
export const weightfit_condAll: (a: number) => number;
export const weightfit_condNearest: (a: number) => number;
export const weightfit_marginal: (a: number) => number;
export const weightfit_weights: (a: number) => [number, number];
export const weightfit_width: (a: number) => number;
export const widthCurve: (a: number, b: number, c: number) => [number, number, number];
export const widthcurve_bounds: (a: number) => [number, number];
export const widthcurve_conservative: (a: number) => [number, number];
export const widthcurve_lambda: (a: number) => [number, number];
export const widthcurve_marginal: (a: number) => [number, number];
export const widthcurve_mixture: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
