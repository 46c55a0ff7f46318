"""Degree caps and size budgets shared by the chain-complex builders."""

DEFAULT_CAP = 3
DEFAULT_BUDGET = 2_000_000


class SizeBudgetExceeded(RuntimeError):
    """A chain space in some degree is larger than the configured budget."""

    def __init__(self, degree, size, budget, what="chain space"):
        self.degree = degree
        self.size = size
        self.budget = budget
        super().__init__(
            f"{what} in degree {degree} has dimension {size}, "
            f"exceeding the size budget {budget}"
        )


def check_budget(degree, size, budget, what="chain space"):
    if budget is not None and size > budget:
        raise SizeBudgetExceeded(degree, size, budget, what)
