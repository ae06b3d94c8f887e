/** Minimal deterministic SVG chart builder with the fixed publication
 * layout: data axes [0, 1] x [0, 1.05], horizontal axis "Entanglement of
 * the states" (ebits), vertical axis "Bounds on the cost" (ebits). */

export const X_DOMAIN: [number, number] = [0, 1];
export const Y_DOMAIN: [number, number] = [0, 1.05];

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = { left: 70, right: 20, top: 20, bottom: 55 };

function sx(x: number): number {
  const [lo, hi] = X_DOMAIN;
  return MARGIN.left + ((x - lo) / (hi - lo)) * (WIDTH - MARGIN.left - MARGIN.right);
}

function sy(y: number): number {
  const [lo, hi] = Y_DOMAIN;
  return HEIGHT - MARGIN.bottom - ((y - lo) / (hi - lo)) * (HEIGHT - MARGIN.top - MARGIN.bottom);
}

function fmt(v: number): string {
  return v.toFixed(2).replace(/\.?0+$/, "") || "0";
}

export interface Line {
  points: [number, number][];
  stroke: string;
  dashed?: boolean;
  label?: string;
}

export interface Scatter {
  points: [number, number][];
  fill: string;
  label?: string;
}

export class Chart {
  private parts: string[] = [];
  private legend: { label: string; color: string; dashed: boolean }[] = [];

  line(l: Line): this {
    const d = l.points
      .map(([x, y], i) => `${i === 0 ? "M" : "L"}${sx(x).toFixed(2)},${sy(y).toFixed(2)}`)
      .join(" ");
    const dash = l.dashed ? ' stroke-dasharray="6,4"' : "";
    this.parts.push(
      `<path d="${d}" fill="none" stroke="${l.stroke}" stroke-width="1.8"${dash}/>`,
    );
    if (l.label) this.legend.push({ label: l.label, color: l.stroke, dashed: !!l.dashed });
    return this;
  }

  scatter(s: Scatter): this {
    for (const [x, y] of s.points) {
      this.parts.push(
        `<circle cx="${sx(x).toFixed(2)}" cy="${sy(y).toFixed(2)}" r="2.5" fill="${s.fill}"/>`,
      );
    }
    if (s.label) this.legend.push({ label: s.label, color: s.fill, dashed: false });
    return this;
  }

  render(title: string): string {
    const axes: string[] = [];
    axes.push(
      `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${WIDTH - MARGIN.left - MARGIN.right}" height="${HEIGHT - MARGIN.top - MARGIN.bottom}" fill="none" stroke="black"/>`,
    );
    for (let i = 0; i <= 5; i++) {
      const xv = i / 5;
      axes.push(
        `<line x1="${sx(xv)}" y1="${sy(0)}" x2="${sx(xv)}" y2="${sy(0) + 5}" stroke="black"/>`,
        `<text x="${sx(xv)}" y="${sy(0) + 20}" font-size="12" text-anchor="middle">${fmt(xv)}</text>`,
      );
      const yv = i * 0.2;
      if (yv <= Y_DOMAIN[1]) {
        axes.push(
          `<line x1="${sx(0) - 5}" y1="${sy(yv)}" x2="${sx(0)}" y2="${sy(yv)}" stroke="black"/>`,
          `<text x="${sx(0) - 10}" y="${sy(yv) + 4}" font-size="12" text-anchor="end">${fmt(yv)}</text>`,
        );
      }
    }
    axes.push(
      `<text x="${(sx(0) + sx(1)) / 2}" y="${HEIGHT - 12}" font-size="14" text-anchor="middle">Entanglement of the states (ebits)</text>`,
      `<text x="18" y="${(sy(0) + sy(1)) / 2}" font-size="14" text-anchor="middle" transform="rotate(-90 18 ${(sy(0) + sy(1)) / 2})">Bounds on the cost (ebits)</text>`,
      `<text x="${(sx(0) + sx(1)) / 2}" y="${MARGIN.top - 5 + 12}" font-size="14" text-anchor="middle" font-weight="bold">${title}</text>`,
    );
    const legend = this.legend.map((entry, i) => {
      const y = MARGIN.top + 16 + i * 18;
      const x = MARGIN.left + 12;
      const dash = entry.dashed ? ' stroke-dasharray="6,4"' : "";
      return (
        `<line x1="${x}" y1="${y}" x2="${x + 26}" y2="${y}" stroke="${entry.color}" stroke-width="1.8"${dash}/>` +
        `<text x="${x + 32}" y="${y + 4}" font-size="12">${entry.label}</text>`
      );
    });
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
      axes.join("\n") +
      "\n" +
      this.parts.join("\n") +
      "\n" +
      legend.join("\n") +
      "\n</svg>\n"
    );
  }
}
