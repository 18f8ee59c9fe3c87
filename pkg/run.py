#!/usr/bin/env python3
import logging
from pathlib import Path

from dotenv import load_dotenv

from config import Config
from figures import figure_table
from utils.io_utils import write_csv
from utils.logger import setup_logger


def run():
    load_dotenv()
    logger = setup_logger(Config.log_level(), Config.log_file() or None)

    output_dir = Path(Config.output_dir())
    output_dir.mkdir(exist_ok=True)

    for figure_id in (1, 2, 3):
        logger.info(f"Regenerating figure {figure_id}")
        try:
            columns, rows = figure_table(figure_id)
            output_file = output_dir / f"figure{figure_id}.csv"
            write_csv(rows, str(output_file), columns=columns)
            logger.info(f"Output saved to: {output_file}")
        except Exception as e:
            logger.error(f"Error building figure {figure_id}: {str(e)}")


if __name__ == "__main__":
    run()
