import logging

import click

from polder.config import Config


def create_cli(config_class=Config):
    """
    Construye el grupo de comandos `polder`.

    Args:
        config_class: Clase de configuración (por defecto Config)

    Returns:
        click.Group
    """

    @click.group(help='Perfiles dinámicos de Casimir-Polder alrededor de un átomo parcialmente vestido.')
    @click.option('--verbose', is_flag=True, help='Activa el nivel DEBUG de logging.')
    @click.pass_context
    def cli(ctx, verbose):
        level = logging.DEBUG if verbose else getattr(logging, str(config_class.LOG_LEVEL).upper(), logging.INFO)
        logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
        logging.getLogger().setLevel(level)
        ctx.ensure_object(dict)
        ctx.obj['config'] = config_class

    # Registrar comandos
    from polder.commands import register_commands
    register_commands(cli)

    return cli
