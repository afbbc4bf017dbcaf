// Decimal-string helpers backed by BigInt so counts and ratios are never
// routed through floating point.

/** Compare two nonnegative decimal strings (integers or fixed-point). */
export function compareDecimal(a: string | null, b: string | null): number {
  if (a === null || b === null) {
    return a === b ? 0 : a === null ? -1 : 1;
  }
  const [ai, af = ""] = a.split(".");
  const [bi, bf = ""] = b.split(".");
  const width = Math.max(af.length, bf.length);
  const left = BigInt(ai + af.padEnd(width, "0"));
  const right = BigInt(bi + bf.padEnd(width, "0"));
  return left < right ? -1 : left > right ? 1 : 0;
}

/** ratio numerator/(numerator+denominator) to six places, exactly. */
export function ratioOf(trueCount: string, falseCount: string): string | null {
  const t = BigInt(trueCount);
  const f = BigInt(falseCount);
  const total = t + f;
  if (total === 0n) return null;
  const scaled = (t * 1000000n) / total;
  const whole = scaled / 1000000n;
  const frac = (scaled % 1000000n).toString().padStart(6, "0");
  return `${whole}.${frac}`;
}

/** Binomial-sum term estimate for the depth annotation: sum of C(n, i). */
export function termEstimate(cycles: number, depth: number | null): string {
  const n = BigInt(cycles);
  const limit = depth === null ? cycles : Math.min(depth, cycles);
  let total = 0n;
  let binom = 1n;
  for (let i = 1; i <= limit; i++) {
    binom = (binom * (n - BigInt(i - 1))) / BigInt(i);
    total += binom;
  }
  return total.toString();
}
