#!/usr/bin/env python

from amolab.ui.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE

STATUS_MESSAGES = {
    EXIT_OK: "Success! Results written to {output}.",
    EXIT_USAGE: "Invalid parameters; nothing was computed.",
    EXIT_NUMERICAL: "Numerical failure; see the .error.json file next to {output}.",
}


class BaseUI:
    HEADER_WIDTH = 36

    def print_header(self, title):
        rule = '=' * self.HEADER_WIDTH
        print(f"\n{rule}\n{title.center(self.HEADER_WIDTH)}\n{rule}")

    def get_int_input(self, prompt, min_val, max_val):
        while True:
            try:
                choice = int(input(prompt))
            except ValueError:
                print("Please enter a valid number")
                continue
            if min_val <= choice <= max_val:
                return choice
            print(f"Please enter a number between {min_val} and {max_val}")

    def get_value_input(self, prompt, default=None):
        """Raw text for a parameter; an empty answer keeps the default."""
        suffix = f" [{default}]" if default is not None else ""
        response = input(f"{prompt}{suffix}: ").strip()
        if response:
            return response
        return None if default is None else str(default)

    def get_yes_no_input(self, prompt):
        return input(f"{prompt} (y/n): ").strip().lower() == 'y'

    def report_status(self, status, output):
        message = STATUS_MESSAGES.get(status, "Command failed with exit status {status}.")
        print("\n" + message.format(output=output, status=status))
