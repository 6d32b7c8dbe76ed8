from handlers.reporthandler import emit_report, to_tsv
from handlers.commandhandler import cli
