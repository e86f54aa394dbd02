"""mini-gringo toolkit: term semantics, τ and τ*, completion, tightness, and bounded verifiers."""

__version__ = "0.1.0"
