"""Deterministic synthetic regression cases.

Builds a templated passing log, then derives a failing log by applying value
updates, deletions, error-line insertions and block moves at configurable
rates. The indices of the injected error lines in the final failing log are
recorded as ground-truth annotations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .logmodel import Log, log_from_lines


@dataclass(frozen=True)
class MutationRates:
    update: float = 0.08
    delete: float = 0.03
    insert: float = 0.02
    move: float = 0.004

    def all_zero(self) -> bool:
        return self.update == self.delete == self.insert == self.move == 0.0


@dataclass(frozen=True)
class RegressionCase:
    id: str
    passing: Log
    failing: Log
    annotations: set[int] | None


_MODULES = ["core", "common", "api", "cli", "runtime", "parser", "net", "storage", "ui", "auth"]
_ARTIFACTS = ["guava", "jackson-core", "logback-classic", "scala-library", "junit", "slf4j-api",
              "commons-io", "netty-all", "snakeyaml", "protobuf-java"]
_TASKS = ["compileJava", "processResources", "checkstyleMain", "test", "assemble", "javadoc",
          "spotbugsMain", "shadowJar", "publishToMavenLocal"]


def _hexid(rng: random.Random, n: int = 10) -> str:
    return "".join(rng.choice("0123456789abcdef") for _ in range(n))


class _TemplateLine:
    """A rendered line that can re-roll its volatile slots."""

    __slots__ = ("static", "volatile", "injected")

    def __init__(self, static: tuple[str, ...], volatile: tuple[str, ...], injected: bool = False):
        self.static = static
        self.volatile = volatile
        self.injected = injected

    def render(self) -> str:
        parts = []
        for i, segment in enumerate(self.static):
            parts.append(segment)
            if i < len(self.volatile):
                parts.append(self.volatile[i])
        return "".join(parts)


def _line(rng: random.Random, static: list[str], volatile_makers) -> _TemplateLine:
    return _TemplateLine(tuple(static), tuple(maker(rng) for maker in volatile_makers))


def _passing_line(rng: random.Random, counter: int) -> _TemplateLine:
    roll = rng.random()
    module = rng.choice(_MODULES)
    artifact = rng.choice(_ARTIFACTS)
    task = rng.choice(_TASKS)
    if roll < 0.02:
        return _TemplateLine(("",), ())
    if roll < 0.18:
        return _line(
            rng,
            [f"Downloading {artifact}-", ".jar"],
            [lambda r: f"{r.randint(1, 9)}.{r.randint(0, 20)}.{r.randint(0, 9)}"],
        )
    if roll < 0.34:
        return _line(
            rng,
            [f"> Task :{module}:{task} completed in ", " ms"],
            [lambda r: str(r.randint(1, 60000))],
        )
    if roll < 0.5:
        return _line(
            rng,
            [f"[INFO] Compiling source file {module}/src_{counter}.java (", " bytes)"],
            [lambda r: str(r.randint(100, 500000))],
        )
    if roll < 0.62:
        return _line(
            rng,
            [f"Test suite_{counter}.{module} passed: ", " assertions"],
            [lambda r: str(r.randint(1, 500))],
        )
    if roll < 0.72:
        return _line(
            rng,
            ["remote: Counting objects: ", f"% ({counter}/512)"],
            [lambda r: str(r.randint(1, 100))],
        )
    if roll < 0.8:
        return _line(rng, ["checkout ref ", ""], [lambda r: _hexid(r)])
    if roll < 0.88:
        return _TemplateLine((f"##[group] Step {counter}: {task}",), ())
    if roll < 0.94:
        return _line(
            rng,
            [f"Resolved configuration :{module}:runtimeClasspath in ", " s"],
            [lambda r: f"{r.random() * 30:.2f}"],
        )
    return _TemplateLine((f"Using cached entry for {module}/{artifact}-{counter}",), ())


def _error_line(rng: random.Random, counter: int) -> _TemplateLine:
    module = rng.choice(_MODULES)
    roll = rng.random()
    # Half the templates carry a conventional keyword, half do not, so that
    # keyword search cannot reach full recall.
    if roll < 0.125:
        text = f"ERROR: {module}/src_{counter}.java: cannot resolve symbol sym_{_hexid(rng, 6)}"
    elif roll < 0.25:
        text = f"Test suite_{counter}.{module} FAILED: expected {rng.randint(0, 9)} but was {rng.randint(10, 99)}"
    elif roll < 0.375:
        text = f"Exception in thread worker-{rng.randint(0, 16)}: IllegalStateException at {module}.java:{rng.randint(1, 999)}"
    elif roll < 0.5:
        text = f"panic: index out of range [{rng.randint(0, 64)}] in {module}_{_hexid(rng, 6)}"
    elif roll < 0.625:
        text = f"{module}/src_{counter}.java:{rng.randint(1, 400)}: unable to parse declaration"
    elif roll < 0.75:
        text = f"Process completed with exit code {rng.randint(1, 9)} in step {counter}"
    elif roll < 0.875:
        text = f"Missing required artifact {module}-{_hexid(rng, 6)}.jar, aborting resolution"
    else:
        text = f"The operation was canceled after {rng.randint(1, 600)} s (step {counter})"
    return _TemplateLine((text,), (), injected=True)


def generate_synthetic_case(
    seed: int,
    size: int = 500,
    rates: MutationRates | None = None,
    case_id: str | None = None,
) -> RegressionCase:
    """Build one deterministic regression case from a seed."""
    if size <= 0:
        raise ValueError("size must be positive")
    rates = rates or MutationRates()
    rng = random.Random(seed)
    passing = [_passing_line(rng, i) for i in range(size)]

    failing: list[_TemplateLine] = []
    for line in passing:
        roll = rng.random()
        if roll < rates.delete:
            continue
        if roll < rates.delete + rates.update and line.volatile:
            failing.append(
                _TemplateLine(
                    line.static,
                    tuple(_reroll(rng, value) for value in line.volatile),
                )
            )
        else:
            failing.append(line)
        if rng.random() < rates.insert:
            burst = 1 if rng.random() < 0.7 else rng.randint(2, 4)
            for _ in range(burst):
                failing.append(_error_line(rng, len(failing)))

    move_count = sum(1 for _ in range(size) if rng.random() < rates.move)
    for _ in range(move_count):
        if len(failing) < 6:
            break
        length = rng.randint(2, min(12, len(failing) // 2))
        start = rng.randint(0, len(failing) - length)
        block = failing[start : start + length]
        del failing[start : start + length]
        dest = rng.randint(0, len(failing))
        failing[dest:dest] = block

    annotations = {i for i, line in enumerate(failing) if line.injected}
    cid = case_id or f"case-{seed:08d}"
    return RegressionCase(
        id=cid,
        passing=log_from_lines([l.render() for l in passing], source=f"{cid}/pass.log"),
        failing=log_from_lines([l.render() for l in failing], source=f"{cid}/fail.log"),
        annotations=annotations,
    )


def _reroll(rng: random.Random, value: str) -> str:
    """Replace a dynamic token with a fresh one of the same shape."""
    out = []
    for ch in value:
        if ch.isdigit():
            out.append(rng.choice("0123456789"))
        elif ch in "abcdef":
            out.append(rng.choice("0123456789abcdef"))
        else:
            out.append(ch)
    return "".join(out)
