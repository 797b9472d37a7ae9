"""Print the 4x4 table, cell by cell.  Pass cells like 4,4 2,8 to restrict; the full table takes a few minutes."""
import sys

from char3.magic import magic_square

cells = [tuple(int(x) for x in a.split(",")) for a in sys.argv[1:]] or None
ms = magic_square(cells=cells, progress=lambda c: print(f"  ({c.d1},{c.d2}) {c.label} {c.superdim_text()}"
                                                       f" {c.seconds:.1f}s", file=sys.stderr))
print(ms.table())
