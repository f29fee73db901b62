#!/usr/bin/env python

from amolab.ui.base_ui import BaseUI
from amolab.ui.cli import PARAMETERS, REQUIRED, RunConfig, run
from amolab.utils.settings import get_thread_count

MENU_COMMANDS = [
    ("butterfly", "Hofstadter butterfly table"),
    ("bands", "Bands and X set of a rational model"),
    ("lyapunov", "Lyapunov exponent"),
    ("ids", "Integrated density of states"),
    ("density", "Smoothed spectral density"),
    ("mfunc", "m-functions at one energy"),
    ("thouless", "Thouless formula"),
    ("holder", "Holder probe of the IDS"),
    ("resonances", "Resonance scan"),
    ("cancel-test", "Cancellation identity sweep"),
    ("shadow", "Shadowing and dynamical cancellation"),
    ("integrated", "Integrated cancellation"),
]


class MenuUI(BaseUI):

    def display_welcome(self):
        print("\n" + "=" * 80)
        print("AMO Lab - Spectral Experiments".center(80))
        print("=" * 80)
        print("\nPick an experiment; press Enter to keep a default value.")

    def build_config(self, command):
        self.print_header(command)
        params = {}
        for name, (_, default) in PARAMETERS[command].items():
            shown = None if default is REQUIRED else default
            value = self.get_value_input(name, shown)
            if value is not None:
                params[name] = value

        output = self.get_value_input("output file", f"data/results/{command}.csv")
        fmt = "json" if output.endswith(".json") else "csv"
        header = self.get_yes_no_input("Write the timestamp header line?")
        return RunConfig(command=command, params=params, output=output, fmt=fmt, header=header,
                         threads=get_thread_count())

    def display_menu(self):
        self.display_welcome()
        exit_choice = len(MENU_COMMANDS) + 1

        while True:
            print("\nMain Menu:")
            for index, (_, label) in enumerate(MENU_COMMANDS, start=1):
                print(f"{index}. {label}")
            print(f"{exit_choice}. Exit")

            choice = self.get_int_input(f"\nEnter choice (1-{exit_choice}): ", 1, exit_choice)
            if choice == exit_choice:
                print("\nExiting AMO Lab. Goodbye!")
                break

            config = self.build_config(MENU_COMMANDS[choice - 1][0])
            self.report_status(run(config), config.output)

            self.wait_for_user()

    def wait_for_user(self):
        input("\nPress Enter to continue...")

    def run(self):
        self.display_menu()
