#!/usr/bin/env python3
"""MILP solver backend: reads an LP-format model, solves it with HiGHS via
scipy.optimize.milp, and writes a "key value" solution file.

Usage: highs_backend.py MODEL.lp PARAMS.txt SOLUTION.sol

Parameter file lines: "time_limit <sec>", "mip_gap <rel>", "threads <n>"
(threads is accepted for interface compatibility and ignored here).

Solution file: header lines (status/objective/gap/seconds/vars) followed by
one "<variable> <value>" line per nonzero variable. Integer variables are
written as exact integers; continuous values are clamped to their bounds
when within 1e-6. Exit code 0 whenever a solution file was written
(including infeasible models), nonzero on internal failure.

The accepted LP grammar is the subset documented in docs/model_reference.md:
sections Minimize/Maximize, Subject To, Bounds, Binaries, End; rows named
"name:"; continuation lines indented; senses <=, >=, =.
"""

import sys
import time


def fail(msg):
    print("highs_backend: " + msg, file=sys.stderr)
    sys.exit(1)


def is_number(tok):
    try:
        float(tok)
        return True
    except ValueError:
        return False


def parse_terms(tokens):
    """Parse [sign] [coef] var sequences; returns list of (var, coef)."""
    terms = []
    sign = 1.0
    coef = None
    for tok in tokens:
        if tok == "+":
            sign = 1.0
        elif tok == "-":
            sign = -1.0
        elif is_number(tok):
            coef = float(tok)
        else:
            terms.append((tok, sign * (1.0 if coef is None else coef)))
            sign = 1.0
            coef = None
    if coef is not None:
        fail("dangling coefficient in term list")
    return terms


def parse_lp(path):
    with open(path) as f:
        raw_lines = f.read().splitlines()

    sense_max = False
    objective = []
    rows = []  # (name, terms, sense, rhs)
    bounds = {}
    binaries = []

    section = None
    row_tokens = []

    def flush_row():
        nonlocal row_tokens
        if not row_tokens:
            return
        name_tok = row_tokens[0]
        if not name_tok.endswith(":"):
            fail("row does not start with a name: " + " ".join(row_tokens[:4]))
        body = row_tokens[1:]
        if name_tok == "obj:":
            objective.extend(parse_terms(body))
        else:
            sense_pos = None
            for idx, tok in enumerate(body):
                if tok in ("<=", ">=", "="):
                    sense_pos = idx
                    break
            if sense_pos is None or sense_pos + 1 >= len(body):
                fail("row without sense/rhs: " + name_tok)
            rows.append((name_tok[:-1], parse_terms(body[:sense_pos]),
                         body[sense_pos], float(body[sense_pos + 1])))
        row_tokens = []

    for line in raw_lines:
        stripped = line.strip()
        if stripped in ("Minimize", "Maximize", "Subject To", "Bounds", "Binaries", "End") \
                and not line.startswith("  "):
            flush_row()
            if stripped in ("Minimize", "Maximize"):
                sense_max = stripped == "Maximize"
                section = "objective"
            elif stripped == "Subject To":
                section = "rows"
            else:
                section = stripped.lower()
            continue
        if not stripped:
            continue
        toks = stripped.split()
        if section in ("objective", "rows"):
            if not line.startswith("  ") and toks[0].endswith(":"):
                flush_row()
            row_tokens.extend(toks)
        elif section == "bounds":
            if len(toks) == 5 and toks[1] == "<=" and toks[3] == "<=":
                bounds[toks[2]] = (float(toks[0]), float(toks[4]))
            elif len(toks) == 3 and toks[1] == "=":
                bounds[toks[0]] = (float(toks[2]), float(toks[2]))
            else:
                fail("unsupported bounds line: " + stripped)
        elif section == "binaries":
            binaries.extend(toks)
        elif section == "end":
            pass
        else:
            fail("tokens outside any section: " + stripped)
    flush_row()
    return sense_max, objective, rows, bounds, binaries


def read_params(path):
    params = {}
    try:
        with open(path) as f:
            for line in f:
                parts = line.split()
                if len(parts) >= 2:
                    params[parts[0]] = parts[1]
    except FileNotFoundError:
        pass
    return params


def main():
    if len(sys.argv) != 4:
        fail("usage: highs_backend.py MODEL.lp PARAMS.txt SOLUTION.sol")
    model_path, params_path, solution_path = sys.argv[1:4]

    import numpy as np
    from scipy import sparse
    from scipy.optimize import milp, LinearConstraint, Bounds

    sense_max, objective, rows, bounds, binaries = parse_lp(model_path)
    params = read_params(params_path)

    # variable order: first appearance in objective, rows, bounds, binaries
    var_index = {}

    def vid(name):
        if name not in var_index:
            var_index[name] = len(var_index)
        return var_index[name]

    for name, _ in objective:
        vid(name)
    for _, terms, _, _ in rows:
        for name, _ in terms:
            vid(name)
    for name in bounds:
        vid(name)
    for name in binaries:
        vid(name)

    nv = len(var_index)
    names = [None] * nv
    for name, idx in var_index.items():
        names[idx] = name

    c = np.zeros(nv)
    for name, coef in objective:
        c[var_index[name]] += coef
    if sense_max:
        c = -c

    lo = np.zeros(nv)
    hi = np.full(nv, np.inf)
    integrality = np.zeros(nv)
    for name in binaries:
        idx = var_index[name]
        integrality[idx] = 1
        hi[idx] = 1.0
    for name, (l, u) in bounds.items():
        idx = var_index[name]
        lo[idx] = l
        hi[idx] = u

    data, ri, ci, con_lb, con_ub = [], [], [], [], []
    for rix, (_, terms, sense, rhs) in enumerate(rows):
        acc = {}
        for name, coef in terms:
            acc[var_index[name]] = acc.get(var_index[name], 0.0) + coef
        for cix, coef in acc.items():
            data.append(coef)
            ri.append(rix)
            ci.append(cix)
        if sense == "<=":
            con_lb.append(-np.inf)
            con_ub.append(rhs)
        elif sense == ">=":
            con_lb.append(rhs)
            con_ub.append(np.inf)
        else:
            con_lb.append(rhs)
            con_ub.append(rhs)

    options = {"disp": False}
    if "time_limit" in params:
        options["time_limit"] = float(params["time_limit"])
    if "mip_gap" in params:
        options["mip_rel_gap"] = float(params["mip_gap"])

    constraints = None
    if rows:
        a_mat = sparse.csc_matrix((data, (ri, ci)), shape=(len(rows), nv))
        constraints = LinearConstraint(a_mat, np.array(con_lb), np.array(con_ub))

    t0 = time.time()
    res = milp(c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lo, hi), options=options)
    elapsed = time.time() - t0

    if res.status == 0:
        status = "optimal"
    elif res.status == 2:
        status = "infeasible"
    elif res.status == 1 and res.x is not None:
        status = "feasible"
    else:
        status = "unknown"

    gap = getattr(res, "mip_gap", None)
    if gap is None or not np.isfinite(gap):
        gap = 0.0 if status == "optimal" else 1.0
    objective_value = 0.0
    if res.x is not None and res.fun is not None:
        objective_value = -res.fun if sense_max else res.fun

    with open(solution_path, "w") as out:
        out.write("status %s\n" % status)
        out.write("objective %.17g\n" % objective_value)
        out.write("gap %.17g\n" % max(0.0, gap))
        out.write("seconds %.6f\n" % elapsed)
        if res.x is not None:
            values = res.x
            out.write("vars %d\n" % nv)
            for idx in range(nv):
                v = float(values[idx])
                if integrality[idx] == 1:
                    r = round(v)
                    if abs(v - r) <= 1e-5:
                        v = float(r)
                else:
                    if v < lo[idx] and v >= lo[idx] - 1e-6:
                        v = float(lo[idx])
                    if v > hi[idx] and v <= hi[idx] + 1e-6:
                        v = float(hi[idx])
                if abs(v) > 1e-11:
                    out.write("%s %.17g\n" % (names[idx], v))
        else:
            out.write("vars 0\n")
    sys.exit(0)


if __name__ == "__main__":
    main()
