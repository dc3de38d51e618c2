"""
Main application entry point.
Build the command-line application and run it.
"""

from tvrestore import create_app

app = create_app()

if __name__ == '__main__':
    app()
