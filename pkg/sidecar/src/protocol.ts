/**
 * CHA2 scorer wire protocol, version 1 (newline-delimited UTF-8):
 *
 *   out  "CHA2-SCORER 1"          once, at startup
 *   in   "SCORE <n>"              followed by n SMILES lines
 *   out  n lines                  decimal in [0,1] or "NaN"
 *   in   "QUIT"                   terminate with exit code 0
 *
 * A malformed command yields one "ERR <reason>" line and the session
 * resynchronizes on the next command line; an oversized batch is read
 * fully (to stay in sync) and answered with a single ERR.
 */

import readline from "node:readline";

export const HANDSHAKE = "CHA2-SCORER 1";
export const BATCH_LIMIT = 10000;

export interface Scorer {
  score(smiles: string): number;
}

type Output = (line: string) => void;

class Session {
  private pending = 0; // SMILES lines still expected for the current batch
  private oversized = false;

  constructor(private scorer: Scorer, private out: Output,
              private quit: () => void) {}

  feed(line: string): void {
    if (this.pending > 0) {
      this.pending -= 1;
      if (!this.oversized) {
        const value = this.scorer.score(line);
        this.out(Number.isNaN(value) ? "NaN" : value.toFixed(10));
      }
      if (this.pending === 0 && this.oversized) {
        this.oversized = false;
        this.out("ERR batch exceeds limit of " + BATCH_LIMIT);
      }
      return;
    }
    if (line === "QUIT") {
      this.quit();
      return;
    }
    const m = /^SCORE (\d+)$/.exec(line);
    if (!m) {
      this.out("ERR unrecognized command");
      return;
    }
    const n = parseInt(m[1], 10);
    if (n === 0) {
      return; // empty batch: zero response lines
    }
    this.pending = n;
    this.oversized = n > BATCH_LIMIT;
  }
}

export function serve(scorer: Scorer, stdin: NodeJS.ReadableStream,
                      stdout: NodeJS.WritableStream,
                      onQuit: () => void): void {
  const out: Output = (line) => stdout.write(line + "\n");
  out(HANDSHAKE);
  const session = new Session(scorer, out, onQuit);
  const rl = readline.createInterface({ input: stdin, terminal: false });
  rl.on("line", (line) => session.feed(line));
  rl.on("close", () => onQuit());
}
