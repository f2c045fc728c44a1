/**
 * Session: a thin binding over the svsim emulator process.
 *
 * Each call writes the program to a scratch file, spawns the emulator CLI
 * (`python -m svsim`) and decodes its JSON output. The emulator runs in a
 * child process, so the Node event loop is never blocked by kernel
 * execution; concurrent calls on distinct Sessions are fine, a single
 * Session serializes nothing and holds no cross-call state.
 *
 * Handles are invalidated explicitly via release(); there is no implicit
 * cleanup tied to garbage collection.
 */
import { execFile } from "node:child_process";
import { mkdtemp, readFile, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

export interface SessionOptions {
  /** Interpreter used to launch the emulator (default: python3). */
  python?: string;
  /** Amplitude precision (default: double). */
  precision?: "single" | "double";
  /** Kernel worker count (default: emulator's own default). */
  threads?: number;
  /** State allocation cap in bytes (default: emulator's own default). */
  memoryLimitBytes?: number;
  /** Largest qubit count state() will transfer (default: 24). */
  stateCap?: number;
}

export interface Complex {
  re: number;
  im: number;
}

/** Failure inside the emulator, carrying its phase-tagged diagnostic. */
export class SessionError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SessionError";
  }
}

interface RunPayload {
  cregs: Record<string, number[]>;
  histogram: Record<string, number>;
  shots: number;
  norm: number;
}

export class Session {
  private readonly options: Required<Pick<SessionOptions, "python" | "precision" | "stateCap">> &
    SessionOptions;
  private released = false;

  constructor(options: SessionOptions = {}) {
    this.options = {
      python: options.python ?? "python3",
      precision: options.precision ?? "double",
      stateCap: options.stateCap ?? 24,
      ...options,
    };
  }

  /**
   * Execute the program `shots` times with seeds seed..seed+shots-1 and
   * return the outcome histogram. Keys concatenate every classical
   * register in declaration order, element 0 leftmost; counts sum to
   * shots.
   */
  async run(source: string, seed: number, shots = 1): Promise<Record<string, number>> {
    this.checkLive();
    if (!Number.isInteger(shots) || shots < 1) {
      throw new SessionError(`shots must be a positive integer, got ${shots}`);
    }
    const payload = await this.invoke(source, seed, { shots });
    return payload.histogram;
  }

  /**
   * Execute the program once and return the final state vector as
   * little-endian indexed amplitudes. Refuses programs above the
   * configured qubit cap to bound the transfer size.
   */
  async state(source: string, seed: number): Promise<Complex[]> {
    this.checkLive();
    const scratch = await mkdtemp(join(tmpdir(), "svsim-state-"));
    try {
      const statePath = join(scratch, "state.json");
      await this.invoke(source, seed, {
        shots: 1,
        stateOut: statePath,
        scratch,
      });
      const raw = JSON.parse(await readFile(statePath, "utf8")) as {
        n_qubits: number;
        amplitudes: [number, number][];
      };
      return raw.amplitudes.map(([re, im]) => ({ re, im }));
    } finally {
      await rm(scratch, { recursive: true, force: true });
    }
  }

  /** Invalidate the handle; further calls throw. */
  release(): void {
    this.released = true;
  }

  private checkLive(): void {
    if (this.released) {
      throw new SessionError("session has been released");
    }
  }

  private async invoke(
    source: string,
    seed: number,
    extra: { shots: number; stateOut?: string; scratch?: string },
  ): Promise<RunPayload> {
    const scratch =
      extra.scratch ?? (await mkdtemp(join(tmpdir(), "svsim-run-")));
    const ownScratch = extra.scratch === undefined;
    try {
      const program = join(scratch, "program.qasm");
      await writeFile(program, source, "utf8");
      const args = [
        "-m",
        "svsim",
        "run",
        program,
        "--seed",
        String(seed),
        "--shots",
        String(extra.shots),
        "--format",
        "json",
        "--precision",
        this.options.precision,
      ];
      if (this.options.threads !== undefined) {
        args.push("--threads", String(this.options.threads));
      }
      if (this.options.memoryLimitBytes !== undefined) {
        args.push("--memory-limit", String(this.options.memoryLimitBytes));
      }
      if (extra.stateOut !== undefined) {
        args.push(
          "--state-out",
          extra.stateOut,
          "--state-cap",
          String(this.options.stateCap),
        );
      }
      let stdout: string;
      try {
        ({ stdout } = await execFileAsync(this.options.python, args, {
          maxBuffer: 16 * 1024 * 1024,
        }));
      } catch (err) {
        const proc = err as { stderr?: string; message: string };
        const diagnostic = proc.stderr?.trim() || proc.message;
        throw new SessionError(diagnostic);
      }
      return JSON.parse(stdout) as RunPayload;
    } finally {
      if (ownScratch) {
        await rm(scratch, { recursive: true, force: true });
      }
    }
  }
}
