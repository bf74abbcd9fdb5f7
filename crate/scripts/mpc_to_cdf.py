#!/usr/bin/env python3
"""Write IEEE Common Data Format files from MATPOWER case files.

The IEEE test cases shipped in data/ were regenerated from the MATPOWER
copies of the University of Washington archive (MATPOWER records that they
were converted from the archive's CDF files). Column positions follow
docs/cdf-columns.md.

usage: mpc_to_cdf.py CASE.m OUT.cdf "DD/MM/YY" "ORIGINATOR" YEAR SEASON "CASE ID"
"""
import collections
import re
import sys


def tokens(txt, name):
    m = re.search(r"mpc\." + name + r"\s*=\s*\[(.*?)\];", txt, re.S)
    rows = []
    for line in m.group(1).split("\n"):
        line = line.split("%")[0].strip().rstrip(";")
        if line:
            rows.append(line.split())
    return rows


def names(txt):
    m = re.search(r"mpc\.bus_name\s*=\s*\{(.*?)\};", txt, re.S)
    if not m:
        return None
    return re.findall(r"'([^']*)'", m.group(1))


def num(v, width):
    """Shortest decimal text of v that fits in width."""
    if isinstance(v, str):
        s = v
    else:
        s = repr(float(v))
    if "e" in s or "E" in s:
        s = "%.*f" % (width - 3, float(s))
    if "." not in s:
        s += ".0"
    if len(s) > width:
        f = float(s)
        for prec in range(width, -1, -1):
            s = "%.*f" % (prec, f)
            if len(s) <= width:
                break
    assert len(s) <= width, (v, width)
    return s


class Card:
    def __init__(self, n=128):
        self.buf = [" "] * n

    def put(self, first, last, text, left=False):
        width = last - first + 1
        assert len(text) <= width, (text, first, last)
        text = text.ljust(width) if left else text.rjust(width)
        self.buf[first - 1:last] = list(text)

    def line(self):
        return "".join(self.buf).rstrip()


def main():
    src, out, date, originator, year, season, case_id = sys.argv[1:8]
    txt = open(src).read()
    base = float(re.search(r"mpc\.baseMVA\s*=\s*([\d.]+)", txt).group(1))
    bus = tokens(txt, "bus")
    gen = tokens(txt, "gen")
    branch = tokens(txt, "branch")
    bus_names = names(txt) or ["Bus %d" % int(b[0]) for b in bus]

    gens = {}
    for g in gen:
        if float(g[7]) <= 0:
            continue
        gens.setdefault(int(g[0]), []).append(g)

    lines = []
    title = Card(73)
    title.put(2, 9, date, left=True)
    title.put(11, 30, originator, left=True)
    title.put(32, 37, "%.1f" % base)
    title.put(39, 42, year)
    title.put(44, 44, season)
    title.put(46, 73, case_id, left=True)
    lines.append(title.line())
    lines.append("BUS DATA FOLLOWS".ljust(44) + "%d ITEMS" % len(bus))
    for b, name in zip(bus, bus_names):
        num_id = int(b[0])
        c = Card()
        c.put(1, 4, str(num_id))
        c.put(6, 17, name[:12], left=True)
        c.put(19, 20, str(int(float(b[6]))))
        c.put(21, 23, str(int(float(b[10]))))
        c.put(25, 26, str(int(float(b[1]))))
        c.put(28, 33, num(b[7], 6))
        c.put(34, 40, num(b[8], 7))
        c.put(41, 49, num(b[2], 9))
        c.put(50, 59, num(b[3], 10))
        pg = sum(float(g[1]) for g in gens.get(num_id, []))
        qg = sum(float(g[2]) for g in gens.get(num_id, []))
        c.put(60, 67, num(pg, 8))
        c.put(68, 75, num(qg, 8))
        c.put(77, 83, num(b[9], 7))
        if num_id in gens:
            g = gens[num_id][0]
            c.put(85, 90, num(g[5], 6))
            c.put(91, 98, num(sum(float(x[3]) for x in gens[num_id]), 8))
            c.put(99, 106, num(sum(float(x[4]) for x in gens[num_id]), 8))
        else:
            c.put(85, 90, "0.0")
            c.put(91, 98, "0.0")
            c.put(99, 106, "0.0")
        c.put(107, 114, num(float(b[4]) / base, 8))
        c.put(115, 122, num(float(b[5]) / base, 8))
        c.put(124, 127, "0")
        lines.append(c.line())
    lines.append("-999")
    lines.append("BRANCH DATA FOLLOWS".ljust(44) + "%d ITEMS" % len(branch))
    circuits = collections.Counter()
    for r in branch:
        f, t = int(r[0]), int(r[1])
        circuits[(min(f, t), max(f, t))] += 1
        tap = float(r[8])
        c = Card()
        c.put(1, 4, str(f))
        c.put(6, 9, str(t))
        c.put(11, 12, "1")
        c.put(13, 15, "1")
        c.put(17, 17, str(circuits[(min(f, t), max(f, t))]))
        c.put(19, 19, "1" if tap != 0 else "0")
        c.put(20, 29, num(r[2], 10))
        c.put(30, 40, num(r[3], 11))
        c.put(41, 50, num(r[4], 10))
        c.put(51, 55, str(int(float(r[5]))))
        c.put(57, 61, str(int(float(r[6]))))
        c.put(63, 67, str(int(float(r[7]))))
        c.put(69, 72, "0")
        c.put(74, 74, "0")
        c.put(77, 82, num(r[8], 6))
        c.put(84, 90, num(r[9], 7))
        lines.append(c.line())
    lines.append("-999")
    lines += [
        "LOSS ZONES FOLLOWS                     0 ITEMS",
        "-99",
        "INTERCHANGE DATA FOLLOWS               0 ITEMS",
        "-9",
        "TIE LINES FOLLOWS                      0 ITEMS",
        "-999",
        "END OF DATA",
    ]
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
