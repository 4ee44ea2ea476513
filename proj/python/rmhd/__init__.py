try:
    from rmhd import _rmhd as _impl  # installed package layout
except ImportError:
    import _rmhd as _impl  # build-tree layout

advance_limit = _impl.advance_limit
besov_norm = _impl.besov_norm
bony_remainder = _impl.bony_remainder
config_hash = _impl.config_hash
default_config = _impl.default_config
divergence = _impl.divergence
invariant_suite = _impl.invariant_suite
leray_project = _impl.leray_project
make_limit_data = _impl.make_limit_data
paraproduct = _impl.paraproduct
sobolev_norm = _impl.sobolev_norm
version = _impl.version

__all__ = [
    "advance_limit",
    "besov_norm",
    "bony_remainder",
    "config_hash",
    "default_config",
    "divergence",
    "invariant_suite",
    "leray_project",
    "make_limit_data",
    "paraproduct",
    "sobolev_norm",
    "version",
]
