"""Command-line interface: run the extractions a job file requests.

Exit codes: 0 success, 2 configuration error, 3 data or model error,
4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .errors import InputDataError, JobConfigError, ModelError
from .job import load_job

EXIT_OK = 0
EXIT_CONFIGURATION = 2
EXIT_DATA = 3
EXIT_IO = 4


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = argparse.ArgumentParser(
        prog="flexlex-extract",
        description="Extract contextual and static embeddings into WCF1 stores",
    )
    parser.add_argument("job", help="key=value job file")
    args = parser.parse_args(argv)
    try:
        job = load_job(args.job)
        if job.model is not None:
            from .extract import extract

            extract(job)
        if job.static_vectors is not None:
            from .static import extract_static

            extract_static(job)
    except JobConfigError as error:
        print(f"configuration error: {error}", file=sys.stderr)
        return EXIT_CONFIGURATION
    except (InputDataError, ModelError) as error:
        print(f"data error: {error}", file=sys.stderr)
        return EXIT_DATA
    except OSError as error:
        print(f"i/o error: {error}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
