/** Sidecar entry point: load the chemistry engine, then serve stdio. */

import type { RDKitLoader } from "@rdkit/rdkit";

import { serve } from "./protocol";
import { QedScorer } from "./qed";

// the package ships the loader as its CommonJS export; the bundled type
// declarations only describe the browser global
// eslint-disable-next-line @typescript-eslint/no-var-requires
const initRDKitModule: RDKitLoader = require("@rdkit/rdkit");

async function main(): Promise<void> {
  const rdkit = await initRDKitModule();
  const scorer = new QedScorer(rdkit);
  serve(scorer, process.stdin, process.stdout, () => process.exit(0));
}

main().catch((err) => {
  process.stderr.write(`scorer failed to start: ${err}\n`);
  process.exit(1);
});
