import logging
import os
import sys

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL_ENV = "SNAKE_LOG_LEVEL"
RESULT = 35


def add_logging_level(level_name: str, level_num: int, method_name: str | None = None) -> None:
	"""
	Adds a new logging level to the `logging` module and the logger class.

	`level_name` becomes an attribute of `logging` with the value `level_num`;
	`method_name` (default: `level_name.lower()`) becomes a method on
	`logging` and on the logger class. Raises `AttributeError` if any of those
	names already exist.

	Example
	-------
	>>> add_logging_level('RESULT', 35)
	>>> logging.getLogger(__name__).result('game won in %d steps', 212)
	"""
	if not method_name:
		method_name = level_name.lower()

	if hasattr(logging, level_name):
		raise AttributeError(f'{level_name} already defined in logging module')
	if hasattr(logging, method_name):
		raise AttributeError(f'{method_name} already defined in logging module')
	if hasattr(logging.getLoggerClass(), method_name):
		raise AttributeError(f'{method_name} already defined in logger class')

	def log_for_level(self, message, *args, **kwargs):
		if self.isEnabledFor(level_num):
			self._log(level_num, message, args, **kwargs)

	def log_to_root(message, *args, **kwargs):
		logging.log(level_num, message, *args, **kwargs)

	logging.addLevelName(level_num, level_name)
	setattr(logging, level_name, level_num)
	setattr(logging.getLoggerClass(), method_name, log_for_level)
	setattr(logging, method_name, log_to_root)


class SnakeFormatter(logging.Formatter):
	def format(self, record):
		# "solver.solver" -> "solver"
		if isinstance(record.name, str) and "." in record.name:
			record.name = record.name.split(".")[-2]
		return super().format(record)


def setup_logging(level: str | None = None) -> None:
	try:
		add_logging_level('RESULT', RESULT)
	except AttributeError:
		pass  # already added

	log_type = (level or os.getenv(LOG_LEVEL_ENV, 'info')).lower()

	root = logging.getLogger()
	if root.hasHandlers():
		return

	console = logging.StreamHandler(sys.stdout)
	if log_type == 'result':
		console.setLevel('RESULT')
		console.setFormatter(SnakeFormatter('%(message)s'))
	else:
		console.setFormatter(SnakeFormatter('%(levelname)-8s [%(name)s] %(message)s'))
	root.addHandler(console)

	if log_type == 'result':
		root.setLevel('RESULT')
	elif log_type == 'debug':
		root.setLevel(logging.DEBUG)
	elif log_type == 'warning':
		root.setLevel(logging.WARNING)
	else:
		root.setLevel(logging.INFO)

	# worker processes inherit nothing from here; keep library chatter down
	for name in ('asyncio', 'concurrent.futures'):
		third_party = logging.getLogger(name)
		third_party.setLevel(logging.ERROR)
		third_party.propagate = False
