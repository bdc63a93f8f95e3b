from polder.commands.main import sweep, certify, coeffs, front


def register_commands(group):
    for command in (sweep, certify, coeffs, front):
        group.add_command(command)
