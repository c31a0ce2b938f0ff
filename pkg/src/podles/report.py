"""Verification reports shared by every suite and emitted by the CLI."""

import json
import time

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


class Check:
    """One named verification outcome.

    `residual` is a float (numeric checks) or None; `exact_zero` is set for
    exact checks whose residual vanished identically.  `witness` carries a
    rendered expression explaining a failure.  `erratum` names a documented
    misprint when a verbatim identity is known to fail.
    """

    __slots__ = ("id", "description", "status", "residual", "exact_zero",
                 "witness", "erratum")

    def __init__(self, id, description, status, residual=None,
                 exact_zero=None, witness=None, erratum=None):
        self.id = id
        self.description = description
        self.status = status
        self.residual = residual
        self.exact_zero = exact_zero
        self.witness = witness
        self.erratum = erratum

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        out = {"id": self.id, "description": self.description,
               "status": self.status}
        if self.residual is not None:
            out["residual"] = float(self.residual)
        if self.exact_zero is not None:
            out["exact_zero"] = bool(self.exact_zero)
        if self.witness is not None:
            out["witness"] = self.witness
        if self.erratum is not None:
            out["erratum"] = self.erratum
        return out

    def __repr__(self):
        return f"Check({self.id!r}, {self.status})"


class Report:
    """Ordered list of checks for a suite, plus config echo and extras.

    `extras` holds suite specific tables (decay fits, structure constants)
    that are serialised alongside the checks.
    """

    def __init__(self, suite, config=None):
        self.suite = suite
        self.config = dict(config or {})
        self.checks = []
        self.extras = {}
        self.timing = {}
        self._t0 = time.perf_counter()

    def add(self, id, description, ok, **kw):
        status = kw.pop("status", None) or (PASS if ok else FAIL)
        check = Check(id, description, status, **kw)
        self.checks.append(check)
        return check

    def exact(self, id, description, residual, render=str, erratum=None):
        """Record an exact check: `residual` is an object that is falsy iff
        the identity holds."""
        ok = not residual
        return self.add(id, description, ok, exact_zero=ok,
                        witness=None if ok else render(residual),
                        erratum=None if ok else erratum)

    def numeric(self, id, description, residual, tol):
        ok = residual <= tol
        return self.add(id, description, ok, residual=residual)

    def skip(self, id, description, why):
        return self.add(id, description, False, status=SKIP, witness=why)

    def merge(self, other):
        self.checks.extend(other.checks)
        for k, v in other.extras.items():
            self.extras[k] = v
        self.timing.update(other.timing)
        self.timing[other.suite] = other.elapsed()
        return self

    def finish(self):
        self.timing[self.suite] = self.elapsed()
        return self

    def elapsed(self):
        return round(time.perf_counter() - self._t0, 3)

    def get(self, id):
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    @property
    def failed(self):
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self):
        return not self.failed

    def exit_code(self):
        return 0 if self.ok else 1

    def to_dict(self, with_timing=True):
        out = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "summary": {
                "total": len(self.checks),
                "passed": sum(c.status == PASS for c in self.checks),
                "failed": sum(c.status == FAIL for c in self.checks),
                "skipped": sum(c.status == SKIP for c in self.checks),
            },
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.extras:
            out["extras"] = self.extras
        if with_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, with_timing=True):
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=False)

    def to_text(self):
        lines = [f"suite: {self.suite}"]
        for c in self.checks:
            line = f"[{c.status.upper():4}] {c.id}: {c.description}"
            if c.residual is not None:
                line += f"  (residual {c.residual:.3e})"
            lines.append(line)
            if c.status == FAIL and c.witness:
                lines.append(f"       witness: {c.witness}")
            if c.erratum:
                lines.append(f"       erratum: {c.erratum}")
        s = self.to_dict()["summary"]
        lines.append(f"{s['passed']} passed, {s['failed']} failed, "
                     f"{s['skipped']} skipped")
        return "\n".join(lines)
