/**
 * Quantitative estimate of drug-likeness over RDKit descriptors.
 *
 * Eight descriptors (MW, ALOGP, HBA, HBD, PSA, ROTB, AROM, ALERTS) run
 * through the published asymmetric-double-sigmoid desirability curves and
 * are aggregated as a weighted geometric mean with the published mean
 * weights. Curve maxima are found numerically at startup, so every
 * desirability is normalized to peak at 1.
 *
 * HBA, ROTB (strict) and ALERTS are SMARTS-based counts; the alert set is
 * the subset of the published structural-alert list expressible for the
 * chemistry this project generates (no metals, no isotopes). Unparseable
 * SMILES score as NaN.
 */

import type { JSMol, RDKitModule } from "@rdkit/rdkit";

import { ALERT_SMARTS } from "./alerts";

interface AdsParams {
  a: number;
  b: number;
  c: number;
  d: number;
  e: number;
  f: number;
}

const ADS: Record<string, AdsParams> = {
  MW: { a: 2.817065973, b: 392.5754953, c: 290.7489764, d: 2.419764353, e: 49.22325677, f: 65.37051707 },
  ALOGP: { a: 3.172690585, b: 137.8624751, c: 2.534937431, d: 4.581497897, e: 0.822739154, f: 0.576295591 },
  HBA: { a: 2.948620388, b: 160.4605972, c: 3.615294657, d: 4.435986202, e: 0.290141953, f: 1.300669958 },
  HBD: { a: 1.618662227, b: 1010.051101, c: 0.985094388, d: 1e-12, e: 0.713820843, f: 0.920922555 },
  PSA: { a: 1.876861559, b: 125.2232657, c: 62.90773554, d: 87.83366614, e: 12.01999824, f: 28.51324732 },
  ROTB: { a: 0.01, b: 272.4121427, c: 2.55837997, d: 1.565547684, e: 1.271567166, f: 2.758063707 },
  AROM: { a: 3.21778897, b: 957.7374108, c: 2.274627939, d: 1e-12, e: 1.317690384, f: 0.375760881 },
  ALERTS: { a: 0.01, b: 1199.094025, c: -0.09002883, d: 1e-12, e: 0.185904477, f: 0.875193782 },
};

const WEIGHTS: Record<string, number> = {
  MW: 0.66, ALOGP: 0.46, HBA: 0.05, HBD: 0.61,
  PSA: 0.06, ROTB: 0.65, AROM: 0.48, ALERTS: 0.95,
};

const ACCEPTOR_SMARTS = [
  "[oH0;X2]", "[OH1;X2;v2]", "[OH0;X2;v2]", "[OH0;X1;v2]", "[O-;X1]",
  "[SH0;X2;v2]", "[SH0;X1;v2]", "[S-;X1]", "[nH0;X2]", "[NH0;X1;v3]",
  "[$([N;+0;X3;v3]);!$(N[C,S]=O)]",
];

const ROTATABLE_STRICT =
  "[!$(*#*)&!D1;!$(C(F)(F)F);!$(C(Cl)(Cl)Cl);!$(C(Br)(Br)Br);" +
  "!$(C([CH3])([CH3])[CH3]);!$([CD3](=[N,O,S])-!@[#7,O,S!D1]);" +
  "!$([#7,O,S!D1]-!@[CD3]=[N,O,S]);!$([CD3](=[N+])-!@[#7!D1]);" +
  "!$([#7!D1]-!@[CD3]=[N+])]-!@[!$(*#*)&!D1;!$(C(F)(F)F);" +
  "!$(C(Cl)(Cl)Cl);!$(C(Br)(Br)Br);!$(C([CH3])([CH3])[CH3])]";

function ads(x: number, p: AdsParams): number {
  const rise = p.b / (1 + Math.exp(-(x - p.c + p.d / 2) / p.e));
  const fall = 1 - 1 / (1 + Math.exp(-(x - p.c - p.d / 2) / p.f));
  return p.a + rise * fall;
}

/** Numeric maximum of an ADS curve: coarse grid then ternary refinement. */
function curveMax(p: AdsParams): number {
  let bestX = 0;
  let bestV = -Infinity;
  const lo = -200;
  const hi = 2000;
  const steps = 44000;
  for (let i = 0; i <= steps; i++) {
    const x = lo + ((hi - lo) * i) / steps;
    const v = ads(x, p);
    if (v > bestV) {
      bestV = v;
      bestX = x;
    }
  }
  let a = bestX - (hi - lo) / steps;
  let b = bestX + (hi - lo) / steps;
  for (let i = 0; i < 200; i++) {
    const m1 = a + (b - a) / 3;
    const m2 = b - (b - a) / 3;
    if (ads(m1, p) < ads(m2, p)) a = m1;
    else b = m2;
  }
  return Math.max(bestV, ads((a + b) / 2, p));
}

const DMAX: Record<string, number> = {};
for (const key of Object.keys(ADS)) {
  DMAX[key] = curveMax(ADS[key]);
}

export class QedScorer {
  private acceptors: JSMol[];
  private rotatable: JSMol;
  private alerts: JSMol[];

  constructor(private rdkit: RDKitModule) {
    this.acceptors = ACCEPTOR_SMARTS.map((s) => this.qmol(s));
    this.rotatable = this.qmol(ROTATABLE_STRICT);
    this.alerts = [];
    for (const s of ALERT_SMARTS) {
      try {
        this.alerts.push(this.qmol(s));
      } catch (err) {
        // an unparseable alert is a packaging bug, not a data problem
        throw new Error(`alert SMARTS failed to parse: ${s}`);
      }
    }
  }

  private qmol(smarts: string): JSMol {
    const q = this.rdkit.get_qmol(smarts);
    if (!q) throw new Error(`bad SMARTS: ${smarts}`);
    return q;
  }

  private countMatches(mol: JSMol, query: JSMol): number {
    const raw = mol.get_substruct_matches(query);
    if (!raw || raw === "{}") return 0;
    const parsed = JSON.parse(raw);
    return Array.isArray(parsed) ? parsed.length : 0;
  }

  private hasMatch(mol: JSMol, query: JSMol): boolean {
    const raw = mol.get_substruct_match(query);
    return !!raw && raw !== "{}";
  }

  /** QED in [0, 1], or NaN for molecules RDKit cannot parse. */
  score(smiles: string): number {
    let mol: JSMol | null = null;
    try {
      mol = this.rdkit.get_mol(smiles);
    } catch {
      return NaN;
    }
    if (!mol) return NaN;
    try {
      const desc = JSON.parse(mol.get_descriptors());
      const values: Record<string, number> = {
        MW: desc.amw,
        ALOGP: desc.CrippenClogP,
        HBA: this.acceptors.reduce(
          (n, q) => n + this.countMatches(mol!, q), 0
        ),
        HBD: desc.NumHBD,
        PSA: desc.tpsa,
        ROTB: this.countMatches(mol, this.rotatable),
        AROM: desc.NumAromaticRings,
        ALERTS: this.alerts.reduce(
          (n, q) => n + (this.hasMatch(mol!, q) ? 1 : 0), 0
        ),
      };
      let logSum = 0;
      let weightSum = 0;
      for (const key of Object.keys(ADS)) {
        const desirability = Math.max(
          ads(values[key], ADS[key]) / DMAX[key], 1e-10
        );
        logSum += WEIGHTS[key] * Math.log(Math.min(desirability, 1));
        weightSum += WEIGHTS[key];
      }
      const qed = Math.exp(logSum / weightSum);
      return Math.min(Math.max(qed, 0), 1);
    } catch {
      return NaN;
    } finally {
      mol.delete();
    }
  }
}
