from concurrent.futures import ProcessPoolExecutor
from typing import Callable
from typing import List
from typing import Optional
from typing import TypeVar

from tqdm import tqdm  # type: ignore

from pyrwre.logging import logger

T = TypeVar('T')

DEFAULT_CHUNK_SIZE = 8


def replica_map(
    func: Callable[[int], T],
    count: int,
    workers: int = 1,
    progress: bool = False,
    description: Optional[str] = None,
) -> List[T]:
    """Evaluate `func(i)` for every replica index and return results in index order.

    :param func: picklable callable (module-level function or functools.partial of one)
    :param count: number of replicas
    :param workers: worker processes; 1 or less runs in the calling process
    :param progress: show a tqdm progress bar
    :param description: progress bar label
    """
    if count <= 0:
        return []
    bar = tqdm(total=count, desc=description, disable=not progress, leave=False)
    results: List[T] = []
    try:
        if workers <= 1:
            for index in range(count):
                results.append(func(index))
                bar.update(1)
        else:
            logger.debug('Dispatching %s replicas over %s workers', count, workers)
            chunksize = max(1, min(DEFAULT_CHUNK_SIZE, count // (4 * workers) or 1))
            with ProcessPoolExecutor(max_workers=workers) as executor:
                for result in executor.map(func, range(count), chunksize=chunksize):
                    results.append(result)
                    bar.update(1)
    finally:
        bar.close()
    return results
