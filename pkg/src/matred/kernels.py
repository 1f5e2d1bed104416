"""Kernel selection: compiled extension when built, pure Python otherwise.

``matred.kernels.BACKEND`` reports which implementation is active. Both
expose the same functions over independence tables (see ``_kernels``).
"""

try:  # pragma: no cover - exercised indirectly via test_kernels
    from matred import _speedups as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from matred import _kernels as _impl

    BACKEND = "python"

rank_table = _impl.rank_table
weak_map_witness = _impl.weak_map_witness
has_independent_transversal = _impl.has_independent_transversal
min_partition_chi = _impl.min_partition_chi
chi_bruteforce = _impl.chi_bruteforce
list_color_witness = _impl.list_color_witness
