"""Stack calculus and extended stack calculus: reduction, Böhm trees and
constructive separation."""

__version__ = "0.1.0"
