"""Worker threads for channel evaluation and sweeps"""

import queue
import threading
import logging

import numpy as np

from .kernels import beamformed_sums

# logger
logger = logging.getLogger("infocus.workers")


class ChunkWorker(threading.Thread):
    """Thread evaluating the beamformed sums for a contiguous frequency chunk"""

    def __init__(self, phases, dists, freqs, light_speed, out, start, stop):
        """Initialises the worker

        :param phases: per-antenna phases of the active antennas
        :param dists: per-antenna receiver distances of the active antennas
        :param freqs: full frequency grid
        :param light_speed: speed of light (m/s)
        :param out: complex output buffer shared by all workers
        :param start: first frequency index of this chunk
        :param stop: one past the last frequency index of this chunk
        """

        # initialise threading
        threading.Thread.__init__(self)

        # store parameters
        self.phases = phases
        self.dists = dists
        self.freqs = freqs
        self.light_speed = light_speed
        self.out = out
        self.start_index = start
        self.stop_index = stop

        # exception raised by the kernel, if any
        self.error = None

    def run(self):
        """Evaluates this worker's chunk into the shared buffer"""

        try:
            chunk = self.freqs[self.start_index:self.stop_index]
            self.out[self.start_index:self.stop_index] = beamformed_sums(
                self.phases, self.dists, chunk, self.light_speed)
        except Exception as e:
            self.error = e

        logger.debug("Evaluated frequencies %i to %i", self.start_index,
                     self.stop_index)


def chunk_bounds(n_items, n_chunks):
    """Splits range(n_items) into at most n_chunks contiguous (start, stop)
    pairs of near-equal size"""

    n_chunks = max(1, min(int(n_chunks), n_items))
    edges = np.linspace(0, n_items, n_chunks + 1).round().astype(int)

    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def parallel_sums(phases, dists, freqs, light_speed, threads=1):
    """Evaluates the beamformed sums over `threads` worker threads

    :param threads: number of worker threads
    :type threads: int
    :return: complex sums, one per frequency
    :rtype: :class:`numpy.ndarray`
    """

    freqs = np.ascontiguousarray(freqs, dtype=np.float64)
    out = np.empty(freqs.size, dtype=np.complex128)

    if freqs.size == 0:
        return out

    bounds = chunk_bounds(freqs.size, threads)

    if len(bounds) == 1:
        # no need for a thread
        out[:] = beamformed_sums(phases, dists, freqs, light_speed)
        return out

    workers = [ChunkWorker(phases, dists, freqs, light_speed, out, start, stop)
               for start, stop in bounds]

    for worker in workers:
        worker.start()

    for worker in workers:
        worker.join()

    for worker in workers:
        if worker.error is not None:
            raise worker.error

    return out


class SweepWorker(threading.Thread):
    """Thread evaluating sweep points taken from a shared queue"""

    def __init__(self, tasks, evaluate, results):
        """Initialises the worker

        :param tasks: queue of (index, point) tuples
        :type tasks: :class:`queue.Queue`
        :param evaluate: callable turning a point into a list of records
        :param results: dict receiving index -> records
        """

        # initialise threading
        threading.Thread.__init__(self)

        self.tasks = tasks
        self.evaluate = evaluate
        self.results = results

        # first exception raised while evaluating
        self.error = None

    def run(self):
        """Evaluates points until the queue is exhausted"""

        while True:
            try:
                index, point = self.tasks.get_nowait()
            except queue.Empty:
                return

            if self.error is not None:
                # drain remaining tasks after a failure
                continue

            try:
                self.results[index] = self.evaluate(point)
                logger.debug("Evaluated sweep point %i", index)
            except Exception as e:
                self.error = e


def run_points(points, evaluate, threads=1):
    """Evaluates points over worker threads, returning results in input order

    :param points: sequence of sweep points
    :param evaluate: callable applied to each point
    :param threads: number of worker threads
    :return: list of evaluation results, ordered as `points`
    :raises Exception: the first error raised by any evaluation
    """

    tasks = queue.Queue()

    for index, point in enumerate(points):
        tasks.put((index, point))

    results = {}
    n_workers = max(1, min(int(threads), len(points)))
    workers = [SweepWorker(tasks, evaluate, results) for _ in range(n_workers)]

    for worker in workers:
        worker.start()

    for worker in workers:
        worker.join()

    for worker in workers:
        if worker.error is not None:
            raise worker.error

    return [results[index] for index in range(len(points))]
