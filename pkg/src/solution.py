"""Solution files: ORDER / FITNESS / GENERATIONS."""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, TextIO, Union

from src.errors import InstanceFormatError, InvalidChromosomeError
from src.models import Chromosome, FitnessBreakdown, RunResult


@dataclass
class Solution:
    """A reported embedding with its crossing counts."""
    chromosome: Chromosome
    fitness: FitnessBreakdown
    generations: int

    @classmethod
    def from_run(cls, result: RunResult) -> "Solution":
        return cls(
            chromosome=result.best,
            fitness=result.best_fitness,
            generations=result.generations_used,
        )


def format_solution(solution: Solution) -> str:
    order = " ".join(str(i) for i in solution.chromosome.order)
    score = solution.fitness
    return (
        f"ORDER {order}\n"
        f"FITNESS {score.c1} {score.c2} {score.f}\n"
        f"GENERATIONS {solution.generations}\n"
    )


def _ints(tokens: List[str], line: int) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError as exc:
        raise InstanceFormatError(f"invalid integer in {' '.join(tokens)!r}", line) from exc


def parse_solution(text: str) -> Solution:
    """
    Parse solution text; blank lines and '#' comments are ignored.

    Raises:
        InstanceFormatError: missing/duplicate/unknown keys, bad integers,
            or FITNESS whose total is not C1 + C2
    """
    fields: Dict[str, tuple] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        keyword, *tokens = raw.split()
        if keyword not in ("ORDER", "FITNESS", "GENERATIONS"):
            raise InstanceFormatError(f"unknown keyword {keyword!r}", number)
        if keyword in fields:
            raise InstanceFormatError(f"duplicate {keyword} line", number)
        fields[keyword] = (number, _ints(tokens, number))

    for keyword in ("ORDER", "FITNESS", "GENERATIONS"):
        if keyword not in fields:
            raise InstanceFormatError(f"missing {keyword} line")

    order_line, order = fields["ORDER"]
    try:
        chromosome = Chromosome(tuple(order))
    except InvalidChromosomeError as exc:
        raise InstanceFormatError(str(exc), order_line) from exc

    fitness_line, values = fields["FITNESS"]
    if len(values) != 3:
        raise InstanceFormatError("FITNESS needs C1 C2 F", fitness_line)
    c1, c2, total = values
    if c1 < 0 or c2 < 0 or total != c1 + c2:
        raise InstanceFormatError(f"inconsistent FITNESS {c1} {c2} {total}", fitness_line)

    generations_line, generations = fields["GENERATIONS"]
    if len(generations) != 1 or generations[0] < 0:
        raise InstanceFormatError("GENERATIONS needs one non-negative integer", generations_line)

    return Solution(
        chromosome=chromosome,
        fitness=FitnessBreakdown(c1=c1, c2=c2),
        generations=generations[0],
    )


def read_solution(stream: TextIO) -> Solution:
    return parse_solution(stream.read())


def write_solution(solution: Solution, stream: TextIO) -> None:
    stream.write(format_solution(solution))


def load_solution(path: Union[str, Path]) -> Solution:
    with Path(path).open("r", encoding="utf-8") as handle:
        return read_solution(handle)


def save_solution(solution: Solution, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        write_solution(solution, handle)
