"""Client for the external ground-truth scorer sidecar.

Wire protocol (newline-delimited UTF-8 over the child's stdin/stdout):

    sidecar -> "CHA2-SCORER 1"            on startup
    client  -> "SCORE <n>" + n SMILES lines
    sidecar -> n lines, each a decimal in [0, 1] or "NaN"
    client  -> "QUIT"                      to shut down

"NaN" marks a per-molecule scoring failure and comes back as float nan;
callers skip those molecules. Protocol violations raise ProtocolError,
a dead or silent sidecar raises ScorerUnavailable.
"""

from __future__ import annotations

import math
import queue
import subprocess
import threading

from ..errors import ProtocolError, ScorerUnavailable

HANDSHAKE = "CHA2-SCORER 1"
BATCH_LIMIT = 10000
DEFAULT_TIMEOUT = 30.0


class ExternalScorer:
    """One scorer process per instance; batches are serialized over the
    pipe, so share a single instance per process and queue callers."""

    def __init__(self, command: list[str], timeout: float = DEFAULT_TIMEOUT):
        self.command = list(command)
        self.timeout = timeout
        self._proc: subprocess.Popen | None = None
        self._lines: queue.Queue[str | None] = queue.Queue()
        self._lock = threading.Lock()

    def __enter__(self) -> "ExternalScorer":
        self.start()
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def start(self) -> None:
        try:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                encoding="utf-8",
                bufsize=1,
            )
        except OSError as err:
            raise ScorerUnavailable(f"cannot launch {self.command}: {err}")
        threading.Thread(target=self._pump, daemon=True).start()
        first = self._read_line()
        if first != HANDSHAKE:
            self.close()
            raise ProtocolError(f"bad handshake {first!r}")

    def _pump(self) -> None:
        assert self._proc is not None and self._proc.stdout is not None
        for line in self._proc.stdout:
            self._lines.put(line.rstrip("\n"))
        self._lines.put(None)  # EOF marker

    def _read_line(self) -> str:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise ScorerUnavailable(
                f"scorer silent for {self.timeout:.0f} s"
            ) from None
        if line is None:
            raise ScorerUnavailable("scorer process closed its stdout")
        return line

    def _send(self, text: str) -> None:
        if self._proc is None or self._proc.stdin is None:
            raise ScorerUnavailable("scorer not started")
        try:
            self._proc.stdin.write(text)
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as err:
            raise ScorerUnavailable(f"scorer pipe broken: {err}") from None

    def score_batch(self, smiles_batch: list[str]) -> list[float]:
        """One score per input, order preserving; nan marks a failure."""
        out: list[float] = []
        with self._lock:
            for start in range(0, len(smiles_batch), BATCH_LIMIT):
                chunk = smiles_batch[start:start + BATCH_LIMIT]
                if not chunk:
                    continue
                self._send(
                    f"SCORE {len(chunk)}\n" + "".join(
                        s + "\n" for s in chunk
                    )
                )
                for smiles in chunk:
                    line = self._read_line()
                    if line == "NaN":
                        out.append(math.nan)
                        continue
                    try:
                        value = float(line)
                    except ValueError:
                        raise ProtocolError(
                            f"non-decimal response {line!r} for {smiles!r}"
                        ) from None
                    if not 0.0 <= value <= 1.0:
                        raise ProtocolError(
                            f"score {value} outside [0, 1] for {smiles!r}"
                        )
                    out.append(value)
        return out

    def close(self) -> None:
        if self._proc is None:
            return
        try:
            if self._proc.stdin and not self._proc.stdin.closed:
                try:
                    self._proc.stdin.write("QUIT\n")
                    self._proc.stdin.flush()
                    self._proc.stdin.close()
                except (BrokenPipeError, OSError):
                    pass
            self._proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            self._proc.kill()
            self._proc.wait()
        finally:
            self._proc = None
