"""Figure renderer for the channel-coding lab's CSV outputs."""

__version__ = "0.1.0"

from .render import FigureSpec, load_rows, render

__all__ = ["FigureSpec", "load_rows", "render", "__version__"]
