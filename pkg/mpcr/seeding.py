"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Counter-based random streams. Replicates are grouped into fixed-size blocks
and every block draws from its own generator, keyed on the master seed and
the block index, so results do not depend on the order blocks are run in.
"""
# I M P O R T S ###############################################################

from concurrent.futures import ProcessPoolExecutor

from numpy.random import SFC64, Generator, SeedSequence

# C O N S T A N T S ###########################################################

BLOCK_SIZE = 250

# F U N C T I O N S ###########################################################


def block_generator(seed, block):
    """
    Returns the generator of one block of replicates.

    :param seed: the master seed
    :param block: the block index
    :return: a numpy Generator
    """
    return Generator(SFC64(SeedSequence(entropy=seed, spawn_key=(block,))))


def blocks(replicates, block_size=BLOCK_SIZE):
    """
    Splits a replicate count into (block index, replicates in block) pieces.
    """
    return [
        (index, min(block_size, replicates - start))
        for index, start in enumerate(range(0, replicates, block_size))
    ]


def run_blocks(function, seed, replicates, workers=None, block_size=BLOCK_SIZE):
    """
    Evaluates function(generator, count) on every block and returns the
    results ordered by block index. With workers, blocks run in a process
    pool; the ordered reduction keeps results identical to a serial run.

    :param function: a picklable callable taking (generator, count)
    :param seed: the master seed
    :param replicates: the total number of replicates
    :param workers: an optional number of worker processes
    :return: a list of per-block results
    """
    pieces = blocks(replicates, block_size)
    if not workers or workers <= 1:
        return [function(block_generator(seed, index), count) for index, count in pieces]

    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [
            executor.submit(function, block_generator(seed, index), count) for index, count in pieces
        ]
        return [future.result() for future in futures]

# E N D   O F   F I L E #######################################################
