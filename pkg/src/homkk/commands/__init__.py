"""Command objects behind the CLI verbs, one module per verb family."""

from homkk.commands.base import BaseCommand, RunOptions
from homkk.commands.diagrams import ClassifyXCommand, Ext2XCommand, ObstructXCommand, ResolveDiagramCommand, ValidateUpsCommand
from homkk.commands.filtrated import NTBridgeCommand, NTExactCommand, NTObstructCommand, NTResolveCommand, NTValidateCommand
from homkk.commands.laurent import ClassifyZCommand, Ext2ZCommand, ObstructZCommand
from homkk.commands.linear import ExtCommand, HomCommand, SnfCommand

COMMANDS: dict[str, type[BaseCommand]] = {
    command.verb: command
    for command in (
        SnfCommand,
        HomCommand,
        ExtCommand,
        Ext2ZCommand,
        ObstructZCommand,
        ClassifyZCommand,
        ValidateUpsCommand,
        ResolveDiagramCommand,
        Ext2XCommand,
        ObstructXCommand,
        ClassifyXCommand,
        NTValidateCommand,
        NTExactCommand,
        NTResolveCommand,
        NTObstructCommand,
        NTBridgeCommand,
    )
}

__all__ = ["COMMANDS", "BaseCommand", "RunOptions"]
