"""Pure-Python twins of the compiled scan kernels.

All three functions scan precomputed witness rows against the current color
array and return the index of the first hit, or -1.  Color 0 means uncolored.
The compiled versions in ``_scan_c.pyx`` implement the exact same contracts;
``recolor._kernels`` picks whichever is importable.
"""


def first_equal(colors, anchor_color, candidates):
    """Index of the first candidate object carrying ``anchor_color``."""
    for i, obj in enumerate(candidates):
        if colors[obj] == anchor_color:
            return i
    return -1


def first_repetition(colors, rows, width):
    """First row (flat array, ``width`` objects each) that is fully colored
    with its first half colored identically to its second half."""
    half = width // 2
    nrows = len(rows) // width
    for r in range(nrows):
        base = r * width
        ok = True
        for i in range(half):
            a = colors[rows[base + i]]
            if a == 0 or a != colors[rows[base + half + i]]:
                ok = False
                break
        if ok:
            # the first half being colored forces the second half colored too
            return r
    return -1


def first_bicolored(colors, rows, width):
    """First fully colored row alternating between two distinct colors
    (even positions one color, odd positions the other)."""
    nrows = len(rows) // width
    for r in range(nrows):
        base = r * width
        a = colors[rows[base]]
        b = colors[rows[base + 1]]
        if a == 0 or b == 0 or a == b:
            continue
        ok = True
        for i in range(2, width):
            c = colors[rows[base + i]]
            if c != (a if i % 2 == 0 else b):
                ok = False
                break
        if ok:
            return r
    return -1
