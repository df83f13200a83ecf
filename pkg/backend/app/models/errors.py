class LayeredGraphError(ValueError):
    """Base class for every problem found in a layered-graph description"""


class DuplicateLabel(LayeredGraphError):
    def __init__(self, layer: int, label: int):
        super().__init__(f"Layer {layer}: label {label} listed more than once")
        self.layer = layer
        self.label = label


class EmptyLayer(LayeredGraphError):
    def __init__(self, layer: int):
        super().__init__(f"Layer {layer} has no present vertices")
        self.layer = layer


class LayerOutOfRange(LayeredGraphError):
    def __init__(self, layer: int, q: int):
        super().__init__(f"Layer {layer} is outside 1..{q}")
        self.layer = layer


class LabelOutOfRange(LayeredGraphError):
    def __init__(self, layer: int, label: int, k: int):
        super().__init__(f"Layer {layer}: label {label} is outside 1..{k}")
        self.layer = layer
        self.label = label


class SelfLoop(LayeredGraphError):
    def __init__(self, layer: int, label: int):
        super().__init__(f"Layer {layer}: self-loop on label {label}")
        self.layer = layer
        self.label = label


class DuplicateEdge(LayeredGraphError):
    def __init__(self, edge: str):
        super().__init__(f"Duplicate edge {edge}")
        self.edge = edge


class EdgeToAbsentVertex(LayeredGraphError):
    def __init__(self, edge: str, layer: int, label: int):
        super().__init__(f"Edge {edge} touches label {label}, which is absent in layer {layer}")
        self.edge = edge
        self.layer = layer
        self.label = label


class NonAdjacentInterEdge(LayeredGraphError):
    def __init__(self, edge: str):
        super().__init__(f"Inter-layer edge {edge} does not join consecutive layers")
        self.edge = edge


class GraphFormatError(LayeredGraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"Line {line}: {message}")
        self.line = line


class CdsOnDisconnected(LayeredGraphError):
    def __init__(self):
        super().__init__("CDS is only defined on connected layered graphs (CLG)")


class InstanceTooLarge(ValueError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"Instance has {n} vertices; the brute-force oracle is capped at {cap}")
        self.n = n
        self.cap = cap


class UnsupportedMode(ValueError):
    def __init__(self, problem: str, mode: str):
        super().__init__(f"Mode '{mode}' is not available for {problem}; exact mode only exists for CVC and CDS")
        self.problem = problem
        self.mode = mode


class InvalidArgument(ValueError):
    """A command or request parameter outside its allowed range"""
