/**
 * Minimal standalone SVG scene builder: linear scales, axes, lines,
 * markers.  No DOM and no rendering dependencies; figures are assembled
 * as strings so the output depends only on the input data.
 */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 10 : norm >= 2 ? 5 : norm >= 1 ? 2 : 1) * mag;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12; t += step) {
    ticks.push(Number(t.toPrecision(12)));
  }
  return ticks;
}

const fmt = (v: number): string => String(Number(v.toPrecision(6)));

export class SvgBuilder {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  line(
    x1: number,
    y1: number,
    x2: number,
    y2: number,
    stroke: string,
    width = 1,
    dash = "",
  ): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.add(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}"` +
        ` stroke="${stroke}" stroke-width="${width}"${d}/>`,
    );
  }

  polyline(
    pts: Array<[number, number]>,
    stroke: string,
    width = 1.5,
    dash = "",
  ): void {
    if (pts.length === 0) {
      return;
    }
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    const coords = pts.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.add(
      `<polyline points="${coords}" fill="none" stroke="${stroke}"` +
        ` stroke-width="${width}"${d}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, stroke: string): void {
    this.add(
      `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${r}" fill="none"` +
        ` stroke="${stroke}" stroke-width="1.2"/>`,
    );
  }

  text(
    x: number,
    y: number,
    content: string,
    anchor = "middle",
    size = 11,
    extra = "",
  ): void {
    this.add(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}"` +
        ` font-size="${size}" font-family="sans-serif"${extra}>` +
        `${escapeXml(content)}</text>`,
    );
  }

  toString(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}"` +
      ` height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">` +
      `<rect width="100%" height="100%" fill="white"/>` +
      this.parts.join("") +
      `</svg>`
    );
  }
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
