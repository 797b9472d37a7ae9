"""dim instrl, dim L_S L_S and dim K(A,-) for A = C1 (x) C2 with C1 the split octonions."""
import sys
import time

from char3.lie import build_kantor
from char3.structurable import ls_ls_span, tensor_case

dims = [int(a) for a in sys.argv[1:]] or [1, 2, 4]
for d2 in dims:
    t0 = time.perf_counter()
    A = tensor_case(8, d2, verify=False)
    K = build_kantor(A, verify=False)
    print(f"C2 dim {d2}: instrl {A.instrl.dim:3d}  L_S L_S {ls_ls_span(A).dim:3d}  "
          f"K(A,-) {K.G.dim:3d}  ({time.perf_counter() - t0:.1f}s)")
