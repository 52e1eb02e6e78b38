"""
markov-smooth: точка входа CLI
Оценка матриц переходов, сглаживание, бутстрэп и исследование покрытия
"""

import logging
import os
import sys
import traceback
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from .config.config import Config, load_config
from .config.dependencies import setup_services
from .delivery.cli.commands import COMMANDS
from .delivery.cli.parser import parse_args
from .domain.errors import MarkovChainError, NoLimitError

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_NO_LIMIT = 3


def setup_logging(config: Config) -> None:
    """Настройка системы логирования; всё в stderr, stdout занят выводом команд"""
    log_config = config.logging

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]

    log_file = log_config.get("file")
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))

    logging.basicConfig(
        level=getattr(logging, config.log_level.upper(), logging.INFO),
        format=log_config.get("format", "%(asctime)s - %(name)s - %(levelname)s - %(message)s"),
        handlers=handlers,
        force=True,
    )

    if log_config.get("structured", False):
        import structlog

        structlog.configure(
            processors=[
                structlog.stdlib.filter_by_level,
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.stdlib.PositionalArgumentsFormatter(),
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.JSONRenderer(),
            ],
            wrapper_class=structlog.stdlib.BoundLogger,
            logger_factory=structlog.stdlib.LoggerFactory(),
            cache_logger_on_first_use=True,
        )
        renderer = structlog.stdlib.ProcessorFormatter(
            processor=structlog.processors.JSONRenderer(),
            foreign_pre_chain=[
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
            ],
        )
        for handler in handlers:
            handler.setFormatter(renderer)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = parse_args(argv)

    config = load_config(args.env)
    if args.log_level:
        config.logging["level"] = args.log_level
    if getattr(args, "row_tol", None) is not None:
        config.estimation.row_sum_tolerance = args.row_tol
    setup_logging(config)
    logger = logging.getLogger(__name__)

    try:
        services = setup_services(
            config,
            workers=getattr(args, "workers", None),
            decimals=getattr(args, "decimals", None),
        )
        return COMMANDS[args.command](args, services)
    except NoLimitError as e:
        logger.error(f"[ERROR] {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_LIMIT
    except (MarkovChainError, FileNotFoundError, ValidationError) as e:
        logger.error(f"[ERROR] {args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except KeyboardInterrupt:
        logger.info("[WARN] interrupted")
        return 130
    except Exception as e:
        logger.error(f"[ERROR] {args.command} failed: {e}")
        logger.error(traceback.format_exc())
        return 1


if __name__ == "__main__":
    sys.exit(main())
